#include "mqed/fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mqed/errors.hpp"

namespace mqed {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

bool is_vacuum(const MaterialModel& m) { return m.kind() == MaterialModel::Kind::vacuum; }

// Reflection amplitude at zero frequency.
cplx static_reflection(const MaterialModel& m) {
  switch (m.kind()) {
    case MaterialModel::Kind::vacuum:
      return 0.0;
    case MaterialModel::Kind::conductivity:
      return -1.0;
    case MaterialModel::Kind::lorentz:
      return interface_reflection(m, cplx(0.0, 0.0));
  }
  return 0.0;
}

// Neville's scheme evaluated at 0; returns the estimate and the size of the
// last correction as an error indicator.
std::pair<double, double> extrapolate_to_zero(const std::vector<double>& x, std::vector<double> y) {
  const std::size_t n = x.size();
  double last_change = std::abs(y.back());
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const double xi = x[i];
      const double xj = x[i - level];
      const double updated = (xj * y[i] - xi * y[i - 1]) / (xj - xi);
      if (i == n - 1) last_change = std::abs(updated - y[i]);
      y[i] = updated;
    }
  }
  return {y.back(), last_change};
}

CasimirResult casimir_imaginary(const CavityGeometry1D& geo, const CasimirOptions& opts) {
  const double a = geo.gap;
  auto integrand = [&](double xi) -> cplx {
    if (xi <= 0.0) return {};
    const cplx w(0.0, xi);
    const double R =
        (interface_reflection(geo.left, w) * interface_reflection(geo.right, w)).real() * std::exp(-2.0 * xi * a);
    double gap_term = xi * R / (1.0 - R);
    double reference = 0.0;
    if (opts.density_offset) {
      const double c = opts.density_offset(xi);
      gap_term += c;
      reference += c;
    }
    return gap_term - reference;
  };
  quad::QuadSpec spec = opts.spec;
  spec.decay_scale = 1.0 / (2.0 * a);
  const quad::QuadResult r = quad::semi_infinite_quad(integrand, 0.0, spec);
  if (!r.converged) throw QuadratureError("casimir_stress_1d: imaginary-axis integral did not converge");
  return {-r.value.real() / kPi, r.error_estimate / kPi, CasimirMode::imaginary_axis};
}

CasimirResult casimir_real(const CavityGeometry1D& geo, const CasimirOptions& opts) {
  const double a = geo.gap;
  const int M = opts.reflection_orders;
  if (M < 1 || opts.eta_levels < 2) throw InputError("casimir_stress_1d: need reflection_orders >= 1, eta_levels >= 2");
  const cplx rho0 = static_reflection(geo.left) * static_reflection(geo.right);

  std::vector<double> etas, forces;
  double quad_err = 0.0;
  for (int j = 0; j < opts.eta_levels; ++j) {
    const double eta = a / std::ldexp(1.0, j);
    const double cutoff = 36.0 / eta;
    auto integrand = [&](double w) -> cplx {
      if (w <= 0.0) return {};
      const cplx X = interface_reflection(geo.left, cplx(w, 0.0)) * interface_reflection(geo.right, cplx(w, 0.0)) *
                     std::exp(2.0 * kI * w * a);
      // Partial geometric sum X + ... + X^M.
      const cplx partial = (std::abs(1.0 - X) > 1e-12) ? X * (1.0 - std::pow(X, M)) / (1.0 - X) : cplx(M, 0.0);
      double v = (2.0 * kI * w * partial).imag();
      double reference = 0.0;
      if (opts.density_offset) {
        const double c = opts.density_offset(w);
        v += c;
        reference += c;
      }
      return (v - reference) * std::exp(-eta * w);
    };
    quad::QuadSpec spec = opts.spec;
    spec.decay_scale.reset();
    spec.decay_power.reset();
    const double half_waves = cutoff * 2.0 * M * a / kPi;
    spec.initial_panels = std::max(8, static_cast<int>(std::ceil(half_waves)));
    spec.max_subdivisions = std::max(spec.max_subdivisions, 4 * spec.initial_panels);
    const quad::QuadResult r = quad::adaptive_quad(integrand, 0.0, cutoff, spec);
    if (!r.converged) throw QuadratureError("casimir_stress_1d: real-axis integral did not converge");

    // Orders beyond M with the static reflection amplitudes, in closed form.
    double tail = 0.0;
    if (std::abs(rho0) > 0.0) {
      cplx rho_m = std::pow(rho0, M);
      for (long m = M + 1; m <= 2000000; ++m) {
        rho_m *= rho0;
        const cplx den = eta - 2.0 * kI * static_cast<double>(m) * a;
        const double term = (2.0 * kI * rho_m / (den * den)).imag();
        tail += term;
        if (std::abs(rho_m) < 1e-18) break;
      }
    }
    etas.push_back(eta);
    forces.push_back((r.value.real() + tail) / (2.0 * kPi));
    quad_err = std::max(quad_err, r.error_estimate / (2.0 * kPi));
  }
  const auto [force, change] = extrapolate_to_zero(etas, forces);
  return {force, change + quad_err, CasimirMode::real_axis};
}

}  // namespace

std::string to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::correlation:
      return "correlation";
    case DensityKind::intensity:
      return "intensity";
    case DensityKind::current:
      return "current";
  }
  return "?";
}

std::string to_string(CasimirMode mode) {
  return mode == CasimirMode::imaginary_axis ? "imaginary_axis" : "real_axis";
}

double correlation_density_1d(double x1, double x2, double omega, cplx eps) {
  return omega * omega * green_1d(x1, x2, omega, eps).g.imag() / kPi;
}

double correlation_density_1d(double x1, double x2, double omega, const MaterialModel& model) {
  return omega * omega * green_1d(x1, x2, omega, model).g.imag() / kPi;
}

double current_correlation_weight(const MaterialModel& model, double omega) {
  if (!(omega > 0.0)) throw DomainError("current_correlation_weight: omega must be > 0");
  return omega * omega * permittivity(model, omega).imag() / kPi;
}

SpectralDensity spectral_density(const MaterialModel& model, const std::vector<double>& omega, DensityKind kind,
                                 double x1, double x2) {
  SpectralDensity out;
  out.kind = kind;
  out.omega = omega;
  out.density.reserve(omega.size());
  for (double w : omega) {
    switch (kind) {
      case DensityKind::correlation:
        out.density.push_back(correlation_density_1d(x1, x2, w, model));
        break;
      case DensityKind::intensity:
        out.density.push_back(correlation_density_1d(x1, x1, w, model));
        break;
      case DensityKind::current:
        out.density.push_back(current_correlation_weight(model, w));
        break;
    }
  }
  return out;
}

cplx interface_reflection(const MaterialModel& model, cplx omega) {
  if (is_vacuum(model)) return 0.0;
  const cplx n = branch_sqrt(permittivity(model, omega));
  return (1.0 - n) / (1.0 + n);
}

cplx scattered_green_1d(double x, double xp, cplx omega, const CavityGeometry1D& geo) {
  const double a = geo.gap;
  if (!(a > 0.0)) throw DomainError("scattered_green_1d: gap must be > 0");
  if (x < 0.0 || x > a || xp < 0.0 || xp > a) throw DomainError("scattered_green_1d: points must lie in the gap");
  if (omega == cplx(0.0, 0.0)) throw DomainError("scattered_green_1d: omega must be nonzero");
  const cplx rl = interface_reflection(geo.left, omega);
  const cplx rr = interface_reflection(geo.right, omega);
  const cplx k = omega;
  const cplx round_trip = rl * rr * std::exp(2.0 * kI * k * a);
  const cplx D = 1.0 - round_trip;
  const cplx bracket = rl * std::exp(kI * k * (x + xp)) + rr * std::exp(kI * k * (2.0 * a - x - xp)) +
                       2.0 * round_trip * std::cos(k * (x - xp));
  return kI / (2.0 * k * D) * bracket;
}

cplx stress_spectral_density(cplx omega, const CavityGeometry1D& geo) {
  const cplx round_trip =
      interface_reflection(geo.left, omega) * interface_reflection(geo.right, omega) * std::exp(2.0 * kI * omega * geo.gap);
  return 2.0 * kI * omega * round_trip / (1.0 - round_trip);
}

CasimirResult casimir_stress_1d(const CavityGeometry1D& geometry, const CasimirOptions& opts) {
  if (!(geometry.gap > 0.0)) throw ConfigError("casimir_stress_1d: gap must be > 0");
  if (is_vacuum(geometry.left) || is_vacuum(geometry.right)) return {0.0, 0.0, opts.mode};
  return opts.mode == CasimirMode::imaginary_axis ? casimir_imaginary(geometry, opts) : casimir_real(geometry, opts);
}

double ideal_mirror_force(double gap) { return -kPi / (24.0 * gap * gap); }

double slab_pressure(cplx eps, double thickness, double omega, double amplitude) {
  const SlabRT rt = slab_rt(eps, thickness, omega);
  return 0.5 * amplitude * amplitude * (1.0 + std::norm(rt.r) - std::norm(rt.t));
}

double slab_pressure(const MaterialModel& model, double thickness, double omega, double amplitude) {
  return slab_pressure(permittivity(model, omega), thickness, omega, amplitude);
}

CTensor3 dyadic_green_3d(const Vec3& x, const Vec3& xp, double omega, cplx eps) {
  Vec3 d{x[0] - xp[0], x[1] - xp[1], x[2] - xp[2]};
  const double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  if (!(r > 0.0)) throw DomainError("dyadic_green_3d: coincident points");
  for (double& c : d) c /= r;
  const cplx k = sqrt_branch(eps, omega).value;
  const cplx kr = k * r;
  const cplx scalar = std::exp(kI * kr) / (4.0 * kPi * r);
  const cplx iso = 1.0 + kI / kr - 1.0 / (kr * kr);
  const cplx aniso = -1.0 - 3.0 * kI / kr + 3.0 / (kr * kr);
  CTensor3 G{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G[i][j] = scalar * ((i == j ? iso : cplx(0.0)) + aniso * d[i] * d[j]);
  return G;
}

PolaritonExcess polariton_excess_intensity(const Vec3& x, const Vec3& x0, double omega0, double dx, double domega,
                                           const MaterialModel& model) {
  if (!(omega0 > 0.0) || !(dx >= 0.0) || !(domega >= 0.0))
    throw DomainError("polariton_excess_intensity: need omega0 > 0 and nonnegative widths");
  PolaritonExcess out;
  out.regime_warning = domega / omega0 > 0.1;
  const cplx eps = permittivity(model, omega0);
  const double B = 32.0 * std::sqrt(2.0) * kPi * kPi * dx * dx * dx * domega * std::pow(omega0, 4) * eps.imag();
  const CTensor3 G = dyadic_green_3d(x, x0, omega0, eps);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.excess[i][j] = B / kPi * (G[i][2] * std::conj(G[j][2])).real();
  return out;
}

}  // namespace mqed
