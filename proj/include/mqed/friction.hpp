#pragma once

#include <vector>

#include "mqed/greenfn.hpp"
#include "mqed/material.hpp"
#include "mqed/quadrature.hpp"

namespace mqed {

/// Point particle with one internal transition moving at V through a 1D medium.
struct MovingProbe1D {
  double beta = 1.0;
  double omega0 = 0.5;
  double velocity = 0.3;
  MaterialModel medium;
};

struct FrictionValue {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Excitation rate 2 beta^2 omega0^2 int_{omega0/V}^inf (dk/2pi) Im g(k, Vk - omega0).
/// Lorentz and vacuum media only; other kinds raise UnsupportedModel.
FrictionValue transition_rate_1d(const MovingProbe1D& probe, const quad::QuadSpec& spec = {1e-10, 1e-300, 4000});

/// Emitted flux 2 beta^2 omega0^2 int (dk/2pi) k (Vk - omega0) [Im g]^2 over the same range.
FrictionValue emitted_flux_1d(const MovingProbe1D& probe, const quad::QuadSpec& spec = {1e-10, 1e-300, 4000});

/// Integrands of the two expressions above at wavevector k (for tests and benchmarks).
double transition_rate_integrand(const MovingProbe1D& probe, double k);
double emitted_flux_integrand(const MovingProbe1D& probe, double k);

struct PlateFrictionOptions {
  quad::QuadSpec spec{1e-8, 1e-300, 20000};
  /// Evaluate the outer quadrature nodes concurrently.
  bool parallel = false;
};

struct PlateFrictionResult {
  double T_xy = 0.0;
  /// Quadrature error plus the estimated truncated tail beyond k_max.
  double error_estimate = 0.0;
  double k_max = 0.0;
  /// Set when gap * omega_material is not small (electrostatic regime doubtful).
  bool regime_warning = false;
};

/// Lateral stress between sliding plates in the electrostatic limit.
/// The left plate of `scenario` moves with scenario.left.velocity; k_par and
/// k_y of the scenario are ignored (they are integrated over).
PlateFrictionResult plate_friction_stress(const PlanarScenario& scenario, const PlateFrictionOptions& opts = {});

/// Integrand of the stress over (k_y, k_z, omega) built from rp_electrostatic:
/// (1/pi) k_y Im r(omega) Im r(omega - V k_y) e^{-2 k_par a}, before the 1/(2pi)^2.
double friction_integrand(const PlanarScenario& scenario, double k_y, double k_z, double omega);

/// Explicit constant-conductivity form of the same integrand.
double conductivity_friction_integrand(double sigma, double eps_b, double V, double a, double k_y, double k_z,
                                       double omega);

/// k_max = max(15/a, 10 omega_material / |V|).
double friction_k_max(const PlanarScenario& scenario);

struct FrictionSweepPoint {
  double V = 0.0;
  double a = 0.0;
  PlateFrictionResult result;
};

/// Row order: V outer, a inner.
std::vector<FrictionSweepPoint> friction_sweep_serial(const PlanarScenario& base, const std::vector<double>& velocities,
                                                      const std::vector<double>& gaps,
                                                      const PlateFrictionOptions& opts = {});

}  // namespace mqed
