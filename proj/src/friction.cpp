#include "mqed/friction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mqed/errors.hpp"

namespace mqed {

namespace {

constexpr double kPi = std::numbers::pi;

void check_probe(const MovingProbe1D& p) {
  if (!(p.omega0 > 0.0)) throw DomainError("moving probe: omega0 must be > 0");
  if (!(p.velocity >= 0.0 && p.velocity < 1.0)) throw DomainError("moving probe: velocity must lie in [0, 1)");
  if (p.medium.kind() == MaterialModel::Kind::conductivity)
    throw UnsupportedModel("1D friction: conductivity media are not supported (slow large-k decay)");
}

double im_g(const MovingProbe1D& p, double k) {
  const double w = p.velocity * k - p.omega0;
  if (w == 0.0) return 0.0;
  return green_1d_k(k, w, permittivity(p.medium, w)).imag();
}

FrictionValue integrate_probe(const MovingProbe1D& p, const quad::QuadSpec& base, double power,
                              double (*integrand)(const MovingProbe1D&, double)) {
  check_probe(p);
  if (p.velocity == 0.0 || p.medium.kind() == MaterialModel::Kind::vacuum) return {0.0, 0.0};
  quad::QuadSpec spec = base;
  spec.decay_scale.reset();
  spec.decay_power = power;
  const double k_lo = p.omega0 / p.velocity;
  const quad::QuadResult r =
      quad::semi_infinite_quad([&](double k) { return cplx(integrand(p, k), 0.0); }, k_lo, spec);
  return {r.value.real(), r.error_estimate};
}

// Im r_p in the electrostatic limit at any real frequency; zero where the
// reality condition forces it.
double im_rp(const MaterialModel& m, double omega) {
  if (omega == 0.0) return 0.0;
  return rp_electrostatic(m, omega).imag();
}

bool is_vacuum(const MaterialModel& m) { return m.kind() == MaterialModel::Kind::vacuum; }

}  // namespace

double transition_rate_integrand(const MovingProbe1D& p, double k) {
  return 2.0 * p.beta * p.beta * p.omega0 * p.omega0 * im_g(p, k) / (2.0 * kPi);
}

double emitted_flux_integrand(const MovingProbe1D& p, double k) {
  const double ig = im_g(p, k);
  return 2.0 * p.beta * p.beta * p.omega0 * p.omega0 * k * (p.velocity * k - p.omega0) * ig * ig / (2.0 * kPi);
}

FrictionValue transition_rate_1d(const MovingProbe1D& probe, const quad::QuadSpec& spec) {
  return integrate_probe(probe, spec, 5.0, &transition_rate_integrand);
}

FrictionValue emitted_flux_1d(const MovingProbe1D& probe, const quad::QuadSpec& spec) {
  return integrate_probe(probe, spec, 8.0, &emitted_flux_integrand);
}

double friction_integrand(const PlanarScenario& s, double k_y, double k_z, double omega) {
  const double k_par = std::hypot(k_y, k_z);
  const double omega_minus = omega - s.left.velocity * k_y;
  return k_y * im_rp(s.right, omega) * im_rp(s.left.rest, omega_minus) * std::exp(-2.0 * k_par * s.gap) / kPi;
}

double conductivity_friction_integrand(double sigma, double eps_b, double V, double a, double k_y, double k_z,
                                       double omega) {
  const double strip = V * k_y;
  const double lo = std::min(0.0, strip);
  const double hi = std::max(0.0, strip);
  if (omega < lo || omega > hi) throw DomainError("conductivity_friction_integrand: omega outside the strip");
  const double omega_minus = omega - strip;
  const double c = 1.0 + eps_b;
  const double d1 = c * c * omega * omega + sigma * sigma;
  const double d2 = c * c * omega_minus * omega_minus + sigma * sigma;
  return 4.0 * sigma * sigma * k_y * omega * omega_minus / (kPi * d1 * d2) * std::exp(-2.0 * std::hypot(k_y, k_z) * a);
}

double friction_k_max(const PlanarScenario& s) {
  const double w_mat = std::max(s.left.rest.material_frequency(), s.right.material_frequency());
  const double V = std::abs(s.left.velocity);
  double k = 15.0 / s.gap;
  if (V > 0.0) k = std::max(k, 10.0 * w_mat / V);
  return k;
}

PlateFrictionResult plate_friction_stress(const PlanarScenario& s, const PlateFrictionOptions& opts) {
  if (!(s.gap > 0.0)) throw DomainError("plate_friction_stress: gap must be > 0");
  const double V = s.left.velocity;
  if (!(std::abs(V) < 1.0)) throw DomainError("plate_friction_stress: |V| must be < 1");
  PlateFrictionResult out;
  out.k_max = friction_k_max(s);
  out.regime_warning = std::abs(V) > 0.1;
  if (V == 0.0 || is_vacuum(s.left.rest) || is_vacuum(s.right)) return out;

  // Both half-planes k_y > 0 and k_y < 0 give the same contribution, and
  // V -> -V flips the sign, so integrate k_y > 0 at |V| and fold.
  const double speed = std::abs(V);
  const double a = s.gap;
  const double pref = 2.0 / (kPi * 4.0 * kPi * kPi);
  // k_z integral of e^{-2 a sqrt(k_y^2 + k_z^2)} over the real line.
  auto kz_weight = [a](double k) { return 2.0 * k * std::cyl_bessel_k(1.0, 2.0 * a * k); };
  auto f = [&](double k, double t) -> cplx {
    if (k <= 0.0) return {};
    const double strip = speed * k;
    const double w = strip * t;
    return pref * strip * k * kz_weight(k) * im_rp(s.right, w) * im_rp(s.left.rest, w - strip);
  };
  quad::QuadSpec spec = opts.spec;
  spec.decay_scale.reset();
  spec.decay_power.reset();
  spec.reentrant = opts.parallel;
  // Enough initial panels that the e^{-2ka} scale and the strip structure are seen.
  spec.initial_panels = std::max(spec.initial_panels, std::min(64, static_cast<int>(std::ceil(out.k_max * a / 2.0)) + 4));
  const quad::QuadResult r = quad::quad_2d_product(f, {0.0, out.k_max}, [](double) { return quad::Range{0.0, 1.0}; }, spec);
  if (!r.converged) throw QuadratureError("plate_friction_stress: k-space quadrature did not converge");

  // Beyond k_max the integrand falls at least like e^{-2ka}; estimate the tail.
  const quad::QuadResult edge =
      quad::adaptive_quad([&](double t) { return f(out.k_max, t); }, 0.0, 1.0, spec.tightened(0.1));
  const double tail = std::abs(edge.value.real()) / (2.0 * a);

  const double sign = V > 0.0 ? 1.0 : -1.0;
  out.T_xy = sign * r.value.real();
  out.error_estimate = r.error_estimate + tail;
  return out;
}

std::vector<FrictionSweepPoint> friction_sweep_serial(const PlanarScenario& base, const std::vector<double>& velocities,
                                                      const std::vector<double>& gaps, const PlateFrictionOptions& opts) {
  std::vector<FrictionSweepPoint> rows;
  rows.reserve(velocities.size() * gaps.size());
  for (double V : velocities) {
    for (double a : gaps) {
      PlanarScenario s = base;
      s.left.velocity = V;
      s.gap = a;
      rows.push_back({V, a, plate_friction_stress(s, opts)});
    }
  }
  return rows;
}

}  // namespace mqed
