#pragma once

#include <vector>

#include "mqed/fluctuations.hpp"
#include "mqed/friction.hpp"
#include "mqed/material.hpp"

// Sweep kernels. Each comes as a serial reference and an OpenMP version
// that must produce bitwise identical rows: points are independent, each is
// written to its own slot, and nothing is reduced across threads.

namespace mqed::kernels {

struct MaterialRow {
  double omega = 0.0;
  double re_eps = 0.0;
  double im_eps = 0.0;
  double alpha = 0.0;
  double kk_residual = 0.0;
};

struct MaterialTableSpec {
  double omega_max = 50.0;
  /// Samples of Im eps on [0, omega_max] fed to the Kramers-Kronig transform.
  std::size_t spectrum_samples = 50001;
  KKOptions kk;
};

std::vector<MaterialRow> material_table_serial(const MaterialModel& model, const std::vector<double>& omega,
                                               const MaterialTableSpec& spec = {});
std::vector<MaterialRow> material_table_parallel(const MaterialModel& model, const std::vector<double>& omega,
                                                 const MaterialTableSpec& spec = {});

struct CasimirRow {
  double a = 0.0;
  CasimirResult result;
};

std::vector<CasimirRow> casimir_sweep_serial(const CavityGeometry1D& base, const std::vector<double>& gaps,
                                             const CasimirOptions& opts = {});
std::vector<CasimirRow> casimir_sweep_parallel(const CavityGeometry1D& base, const std::vector<double>& gaps,
                                               const CasimirOptions& opts = {});

std::vector<FrictionSweepPoint> friction_sweep_parallel(const PlanarScenario& base,
                                                        const std::vector<double>& velocities,
                                                        const std::vector<double>& gaps,
                                                        const PlateFrictionOptions& opts = {});

struct RateRow {
  double V = 0.0;
  FrictionValue rate;
  FrictionValue flux;
};

std::vector<RateRow> rate_sweep_serial(const MovingProbe1D& base, const std::vector<double>& velocities);
std::vector<RateRow> rate_sweep_parallel(const MovingProbe1D& base, const std::vector<double>& velocities);

SpectralDensity spectral_density_parallel(const MaterialModel& model, const std::vector<double>& omega,
                                          DensityKind kind, double x1 = 0.0, double x2 = 0.0);

struct ReflectionGrid {
  std::vector<double> omega;
  std::vector<double> k_par;
  /// Row-major: index = i_omega * k_par.size() + i_k.
  std::vector<cplx> rp;
};

/// fresnel_rp tabulated over (omega, k_par).
ReflectionGrid reflection_grid_serial(const MaterialModel& model, const std::vector<double>& omega,
                                      const std::vector<double>& k_par);
ReflectionGrid reflection_grid_parallel(const MaterialModel& model, const std::vector<double>& omega,
                                        const std::vector<double>& k_par);

/// Set the OpenMP team size used by the parallel kernels (n <= 0 keeps the default).
void set_jobs(int n);

}  // namespace mqed::kernels
