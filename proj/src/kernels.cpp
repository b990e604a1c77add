#include "mqed/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <optional>

namespace mqed::kernels {

namespace {

// Runs body(i) for i in [0, n) across threads and rethrows the exception of
// the lowest failing index, so failures are as deterministic as results.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class Body>
void serial_for(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

struct MaterialContext {
  const MaterialModel& model;
  std::optional<SampledSpectrum> spectrum;
  const MaterialTableSpec& spec;

  MaterialContext(const MaterialModel& m, const std::vector<double>& omega, const MaterialTableSpec& s)
      : model(m), spec(s) {
    if (!omega.empty()) spectrum.emplace(SampledSpectrum::of(m, 0.0, s.omega_max, s.spectrum_samples));
  }

  MaterialRow row(double w) const {
    MaterialRow r;
    r.omega = w;
    const cplx eps = permittivity(model, w);
    r.re_eps = eps.real();
    r.im_eps = eps.imag();
    r.alpha = reservoir_coupling(model, w);
    r.kk_residual = std::abs(r.re_eps - 1.0 - kk_real_from_imag(*spectrum, w, spec.kk));
    return r;
  }
};

template <class Loop>
std::vector<MaterialRow> material_table(const MaterialModel& model, const std::vector<double>& omega,
                                        const MaterialTableSpec& spec, Loop&& loop) {
  const MaterialContext ctx(model, omega, spec);
  std::vector<MaterialRow> rows(omega.size());
  loop(omega.size(), [&](std::size_t i) { rows[i] = ctx.row(omega[i]); });
  return rows;
}

template <class Loop>
std::vector<CasimirRow> casimir_sweep(const CavityGeometry1D& base, const std::vector<double>& gaps,
                                      const CasimirOptions& opts, Loop&& loop) {
  std::vector<CasimirRow> rows(gaps.size());
  loop(gaps.size(), [&](std::size_t i) {
    CavityGeometry1D g = base;
    g.gap = gaps[i];
    rows[i] = {gaps[i], casimir_stress_1d(g, opts)};
  });
  return rows;
}

template <class Loop>
std::vector<RateRow> rate_sweep(const MovingProbe1D& base, const std::vector<double>& velocities, Loop&& loop) {
  std::vector<RateRow> rows(velocities.size());
  loop(velocities.size(), [&](std::size_t i) {
    MovingProbe1D p = base;
    p.velocity = velocities[i];
    rows[i] = {velocities[i], transition_rate_1d(p), emitted_flux_1d(p)};
  });
  return rows;
}

template <class Loop>
ReflectionGrid reflection_grid(const MaterialModel& model, const std::vector<double>& omega,
                               const std::vector<double>& k_par, Loop&& loop) {
  ReflectionGrid g{omega, k_par, std::vector<cplx>(omega.size() * k_par.size())};
  loop(g.rp.size(), [&](std::size_t idx) {
    g.rp[idx] = fresnel_rp(model, k_par[idx % k_par.size()], omega[idx / k_par.size()]);
  });
  return g;
}

const auto kSerial = [](std::size_t n, auto&& body) { serial_for(n, body); };
const auto kParallel = [](std::size_t n, auto&& body) { parallel_for(n, body); };

}  // namespace

std::vector<MaterialRow> material_table_serial(const MaterialModel& model, const std::vector<double>& omega,
                                               const MaterialTableSpec& spec) {
  return material_table(model, omega, spec, kSerial);
}

std::vector<MaterialRow> material_table_parallel(const MaterialModel& model, const std::vector<double>& omega,
                                                 const MaterialTableSpec& spec) {
  return material_table(model, omega, spec, kParallel);
}

std::vector<CasimirRow> casimir_sweep_serial(const CavityGeometry1D& base, const std::vector<double>& gaps,
                                             const CasimirOptions& opts) {
  return casimir_sweep(base, gaps, opts, kSerial);
}

std::vector<CasimirRow> casimir_sweep_parallel(const CavityGeometry1D& base, const std::vector<double>& gaps,
                                               const CasimirOptions& opts) {
  return casimir_sweep(base, gaps, opts, kParallel);
}

std::vector<FrictionSweepPoint> friction_sweep_parallel(const PlanarScenario& base,
                                                        const std::vector<double>& velocities,
                                                        const std::vector<double>& gaps,
                                                        const PlateFrictionOptions& opts) {
  std::vector<FrictionSweepPoint> rows(velocities.size() * gaps.size());
  if (rows.empty()) return rows;
  PlateFrictionOptions point_opts = opts;
  point_opts.parallel = false;  // parallelism is across sweep points here
  parallel_for(rows.size(), [&](std::size_t idx) {
    PlanarScenario s = base;
    s.left.velocity = velocities[idx / gaps.size()];
    s.gap = gaps[idx % gaps.size()];
    rows[idx] = {s.left.velocity, s.gap, plate_friction_stress(s, point_opts)};
  });
  return rows;
}

std::vector<RateRow> rate_sweep_serial(const MovingProbe1D& base, const std::vector<double>& velocities) {
  return rate_sweep(base, velocities, kSerial);
}

std::vector<RateRow> rate_sweep_parallel(const MovingProbe1D& base, const std::vector<double>& velocities) {
  return rate_sweep(base, velocities, kParallel);
}

SpectralDensity spectral_density_parallel(const MaterialModel& model, const std::vector<double>& omega,
                                          DensityKind kind, double x1, double x2) {
  SpectralDensity out;
  out.kind = kind;
  out.omega = omega;
  out.density.resize(omega.size());
  parallel_for(omega.size(), [&](std::size_t i) {
    // One-point call to the serial reference keeps the formulas in one place.
    out.density[i] = spectral_density(model, {omega[i]}, kind, x1, x2).density[0];
  });
  return out;
}

ReflectionGrid reflection_grid_serial(const MaterialModel& model, const std::vector<double>& omega,
                                      const std::vector<double>& k_par) {
  return reflection_grid(model, omega, k_par, kSerial);
}

ReflectionGrid reflection_grid_parallel(const MaterialModel& model, const std::vector<double>& omega,
                                        const std::vector<double>& k_par) {
  return reflection_grid(model, omega, k_par, kParallel);
}

void set_jobs(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace mqed::kernels
