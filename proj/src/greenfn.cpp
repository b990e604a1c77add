#include "mqed/greenfn.hpp"

#include <cmath>

#include "mqed/errors.hpp"

namespace mqed {

cplx branch_sqrt(cplx z) {
  cplx r = std::sqrt(z);
  if (r.imag() < 0.0 || (r.imag() == 0.0 && r.real() < 0.0)) r = -r;
  if (r.imag() == 0.0) r = cplx(r.real(), 0.0);  // drop a negative zero
  return r;
}

BranchRoot sqrt_branch(cplx eps, double omega) {
  // omega sqrt(eps) and sqrt(omega^2 eps) agree on the branch for omega > 0.
  cplx q = omega * branch_sqrt(eps);
  if (q.imag() < 0.0 || (q.imag() == 0.0 && q.real() < 0.0)) q = -q;
  return {q};
}

GreenEval green_1d(double x, double xp, double omega, cplx eps) {
  if (!(omega > 0.0)) throw DomainError("green_1d: omega must be > 0");
  const BranchRoot q = sqrt_branch(eps, omega);
  const double d = std::abs(x - xp);
  const cplx g = cplx(0.0, 1.0) * std::exp(cplx(0.0, 1.0) * q.value * d) / (2.0 * q.value);
  return {g, q, omega, "homogeneous-1d"};
}

GreenEval green_1d(double x, double xp, double omega, const MaterialModel& model) {
  if (!(omega > 0.0)) throw DomainError("green_1d: omega must be > 0");
  return green_1d(x, xp, omega, permittivity(model, omega));
}

cplx green_1d_k(double k, double omega, cplx eps) {
  const cplx den = k * k - omega * omega * eps;
  if (den == cplx(0.0, 0.0)) throw PoleError("green_1d_k: on the lossless dispersion pole");
  return 1.0 / den;
}

IdentityCheck green_identity_check(double x, double xp, double omega, cplx eps, const quad::QuadSpec& spec) {
  if (!(omega > 0.0)) throw DomainError("green_identity_check: omega must be > 0");
  if (!(eps.imag() > 0.0)) throw DomainError("green_identity_check: needs Im eps > 0");
  const cplx q = sqrt_branch(eps, omega).value;
  const cplx i(0.0, 1.0);
  auto g = [&](double d) { return i * std::exp(i * q * std::abs(d)) / (2.0 * q); };
  auto integrand = [&](double x1) { return g(x - x1) * std::conj(g(xp - x1)); };

  const double lo = std::min(x, xp);
  const double hi = std::max(x, xp);
  quad::QuadSpec outer = spec;
  outer.decay_scale = 1.0 / (2.0 * q.imag());
  quad::QuadResult r = quad::semi_infinite_quad([&](double s) { return integrand(lo - s); }, 0.0, outer);
  r += quad::semi_infinite_quad([&](double s) { return integrand(hi + s); }, 0.0, outer);
  if (hi > lo) {
    quad::QuadSpec mid = spec;
    // Resolve the oscillation e^{2i Re(q) x1} between the two points.
    mid.initial_panels = std::max(1, static_cast<int>(std::ceil((hi - lo) * std::abs(q.real()) / 1.5)));
    r += quad::adaptive_quad(integrand, lo, hi, mid);
  }
  if (!r.converged) throw QuadratureError("green_identity_check: quadrature did not converge");

  IdentityCheck out;
  out.lhs = eps.imag() * r.value.real();
  out.lhs_imag = eps.imag() * r.value.imag();
  out.lhs_error = eps.imag() * r.error_estimate;
  out.rhs = g(x - xp).imag() / (omega * omega);
  return out;
}

IdentityCheck green_identity_check(double x, double xp, double omega, const MaterialModel& model,
                                   const quad::QuadSpec& spec) {
  if (!(omega > 0.0)) throw DomainError("green_identity_check: omega must be > 0");
  return green_identity_check(x, xp, omega, permittivity(model, omega), spec);
}

cplx fresnel_rp(cplx eps, double k_par, double omega) {
  if (!(k_par >= 0.0)) throw DomainError("fresnel_rp: k_par must be >= 0");
  const double k0 = std::abs(omega);
  const cplx kz1 = branch_sqrt(cplx(k0 * k0 - k_par * k_par, 0.0));
  const cplx kz2 = branch_sqrt(eps * (k0 * k0) - k_par * k_par);
  return (eps * kz1 - kz2) / (eps * kz1 + kz2);
}

cplx fresnel_rp(const MaterialModel& model, double k_par, double omega) {
  if (omega < 0.0) return std::conj(fresnel_rp(permittivity(model, -omega), k_par, -omega));
  return fresnel_rp(permittivity(model, omega), k_par, omega);
}

cplx rp_electrostatic(const MaterialModel& model, double omega) {
  // permittivity() already folds negative frequencies through the reality condition.
  const cplx eps = permittivity(model, omega);
  return (eps - 1.0) / (eps + 1.0);
}

SlabRT slab_rt(cplx eps, double thickness, double omega) {
  if (!(thickness > 0.0)) throw DomainError("slab_rt: thickness must be > 0");
  const cplx n = branch_sqrt(eps);
  const cplx i(0.0, 1.0);
  const cplx r12 = (1.0 - n) / (1.0 + n);
  const cplx r23 = -r12;
  const cplx t12 = 2.0 / (1.0 + n);
  const cplx t23 = 2.0 * n / (1.0 + n);
  const cplx phase = std::exp(i * omega * n * thickness);
  const cplx denom = 1.0 + r12 * r23 * phase * phase;
  return {(r12 + r23 * phase * phase) / denom, t12 * t23 * phase / denom};
}

SlabRT slab_rt(const MaterialModel& model, double thickness, double omega) {
  return slab_rt(permittivity(model, omega), thickness, omega);
}

FluxTerm plate_flux_term(const PlanarScenario& s, double omega) {
  const double strip = s.left.velocity * s.k_y;
  if (!(omega > 0.0 && omega < strip)) throw DomainError("plate_flux_term: omega outside (0, V k_y)");
  if (!(s.gap > 0.0)) throw DomainError("plate_flux_term: gap must be > 0");
  const double k0 = omega;
  const double omega_minus = omega - strip;
  FluxTerm out;
  cplx r_right, r_left;
  if (s.k_par > 100.0 * k0) {
    out.kappa = s.k_par;
    r_right = rp_electrostatic(s.right, omega);
    r_left = rp_electrostatic(s.left.rest, omega_minus);
  } else {
    if (!(s.k_par > k0)) throw DomainError("plate_flux_term: k_par must exceed k0 (evanescent waves only)");
    out.kappa = std::sqrt(s.k_par * s.k_par - k0 * k0);
    out.regime_warning = true;
    r_right = fresnel_rp(s.right, s.k_par, omega);
    r_left = fresnel_rp(s.left.rest, s.k_par, omega_minus);
  }
  out.value = s.k_y * std::exp(-2.0 * out.kappa * s.gap) / (k0 * k0) * r_right.imag() * r_left.imag();
  return out;
}

}  // namespace mqed
