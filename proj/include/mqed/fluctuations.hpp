#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "mqed/greenfn.hpp"
#include "mqed/material.hpp"
#include "mqed/quadrature.hpp"

namespace mqed {

enum class DensityKind { correlation, intensity, current };
std::string to_string(DensityKind kind);

struct SpectralDensity {
  std::vector<double> omega;
  std::vector<double> density;
  DensityKind kind = DensityKind::correlation;
};

/// Vacuum gap 0 < x < gap between half-spaces `left` (x < 0) and `right` (x > gap).
struct CavityGeometry1D {
  MaterialModel left;
  MaterialModel right;
  double gap = 1.0;
};

/// (1/pi) omega^2 Im g(x1, x2, omega) in a homogeneous medium.
double correlation_density_1d(double x1, double x2, double omega, const MaterialModel& model);
double correlation_density_1d(double x1, double x2, double omega, cplx eps);

/// (1/pi) omega^2 Im eps(omega), the weight of the spatially local current noise.
double current_correlation_weight(const MaterialModel& model, double omega);

/// Densities sampled on a frequency grid. Correlation and intensity kinds use
/// the homogeneous Green function at (x1, x2); intensity forces x2 = x1.
SpectralDensity spectral_density(const MaterialModel& model, const std::vector<double>& omega,
                                 DensityKind kind, double x1 = 0.0, double x2 = 0.0);

/// Normal-incidence reflection of a vacuum/medium interface, (1 - n)/(1 + n),
/// at complex frequency in the closed upper half-plane.
cplx interface_reflection(const MaterialModel& model, cplx omega);

/// Scattered part g - g0 of the Green function for two points in the gap,
/// summed over all reflections in closed form. Accepts complex frequency.
cplx scattered_green_1d(double x, double xp, cplx omega, const CavityGeometry1D& geometry);

/// omega^2 g^S + d/dx d/dx' g^S at coincidence; independent of position.
cplx stress_spectral_density(cplx omega, const CavityGeometry1D& geometry);

enum class CasimirMode { imaginary_axis, real_axis };
std::string to_string(CasimirMode mode);

struct CasimirOptions {
  CasimirMode mode = CasimirMode::imaginary_axis;
  quad::QuadSpec spec{1e-9, 1e-14, 4000};
  /// Real-axis mode: reflection orders summed with frequency-dependent
  /// coefficients; higher orders use the static reflection amplitudes.
  int reflection_orders = 48;
  /// Real-axis mode: number of convergence-factor values eta_j = gap / 2^j
  /// fed to the eta -> 0 extrapolation.
  int eta_levels = 6;
  /// Synthetic spectral term added to both the gap and the reference
  /// densities before subtraction (used to check that only differences count).
  std::function<double(double)> density_offset;
};

struct CasimirResult {
  /// Force per unit area on the right plate; negative means attraction.
  double force = 0.0;
  double error_estimate = 0.0;
  CasimirMode mode = CasimirMode::imaginary_axis;
};

CasimirResult casimir_stress_1d(const CavityGeometry1D& geometry, const CasimirOptions& opts = {});

/// Ideal-mirror result -pi / (24 a^2).
double ideal_mirror_force(double gap);

/// (1/2)|E0|^2 (1 + |r|^2 - |t|^2) on a slab at normal incidence.
double slab_pressure(const MaterialModel& model, double thickness, double omega, double amplitude);
double slab_pressure(cplx eps, double thickness, double omega, double amplitude);

using Vec3 = std::array<double, 3>;
using Tensor3 = std::array<std::array<double, 3>, 3>;
using CTensor3 = std::array<std::array<cplx, 3>, 3>;

/// Homogeneous-medium dyadic Green function [1 + grad grad / k^2] e^{ikr}/(4 pi r).
CTensor3 dyadic_green_3d(const Vec3& x, const Vec3& xp, double omega, cplx eps);

struct PolaritonExcess {
  Tensor3 excess{};
  /// Set when domega / omega0 > 0.1.
  bool regime_warning = false;
};

/// Excess field correlation at x of a single polariton excited by a Gaussian
/// source of width dx around x0 and bandwidth domega around omega0.
PolaritonExcess polariton_excess_intensity(const Vec3& x, const Vec3& x0, double omega0, double dx,
                                           double domega, const MaterialModel& model);

}  // namespace mqed
