#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mqed/errors.hpp"
#include "mqed/greenfn.hpp"

using namespace mqed;
using std::numbers::pi;

namespace {

const MaterialModel kLorentz = MaterialModel::lorentz(1.0, 1.0, 0.1);
const cplx I(0.0, 1.0);

using V3 = std::array<cplx, 3>;
using M3 = std::array<V3, 3>;  // m[row][col]

V3 cross(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
V3 conj(const V3& a) { return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])}; }
V3 scale(const V3& a, cplx s) { return {a[0] * s, a[1] * s, a[2] * s}; }
V3 add(const V3& a, const V3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
M3 outer(const V3& a, const V3& b) {
  M3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a[i] * b[j];
  return m;
}
M3 madd(const M3& a, const M3& b, cplx s = 1.0) {
  M3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a[i][j] + s * b[i][j];
  return m;
}
M3 mul(const M3& a, const M3& b) {
  M3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m[i][j] += a[i][k] * b[k][j];
  return m;
}

// Surface term composed directly from the two-reflection Green function and
// its curl, evaluated at height x in the gap and source point on the moving
// plate, then symmetrised; returns the x-y element.
double two_reflection_flux(double k0, double ky, double kz, double a, double x, cplx r, cplx r_minus) {
  const double kpar = std::hypot(ky, kz);
  const double kappa = std::sqrt(kpar * kpar - k0 * k0);
  const V3 ex{1.0, 0.0, 0.0};
  const V3 kvec{0.0, ky, kz};
  const V3 u = scale(add(scale(ex, kpar * kpar), scale(kvec, -I * kappa)), 1.0 / (k0 * kpar));
  const V3 v = scale(cross(ex, kvec), 1.0 / kpar);
  const V3 kplus = add(scale(ex, I * kappa), kvec);

  M3 G{};
  const double e1 = std::exp(-kappa * x);
  const double e2 = std::exp(-kappa * (2 * a - x));
  const double e3 = std::exp(-kappa * (2 * a + x));
  M3 id{};
  for (int i = 0; i < 3; ++i) id[i][i] = 1.0;
  G = madd(id, outer(kplus, kplus), -1.0 / (k0 * k0));
  for (auto& row : G)
    for (auto& c : row) c *= e1 / (2 * kappa);
  G = madd(G, outer(u, conj(u)), r_minus * e1 / (2 * kappa));
  G = madd(G, outer(conj(u), u), r * e2 / (2 * kappa));
  G = madd(G, outer(conj(u), conj(u)), r * r_minus * e2 / (2 * kappa));
  G = madd(G, outer(u, u), r * r_minus * e3 / (2 * kappa));

  M3 C{};
  for (int j = 0; j < 3; ++j) {
    V3 ej{};
    ej[j] = 1.0;
    const V3 col = scale(cross(conj(kplus), ej), I * e1 / (2 * kappa));
    for (int i = 0; i < 3; ++i) C[i][j] = col[i];
  }
  const cplx rs = std::conj(r), rms = std::conj(r_minus);
  V3 bracket = scale(conj(u), rms * e1);
  bracket = add(bracket, scale(u, rs * e2));
  bracket = add(bracket, scale(u, rs * rms * e2));
  bracket = add(bracket, scale(conj(u), rs * rms * e3));
  C = madd(C, outer(v, bracket), -I * k0 / (2 * kappa));

  M3 XC{};
  for (int j = 0; j < 3; ++j) {
    const V3 col = cross(ex, V3{C[0][j], C[1][j], C[2][j]});
    for (int i = 0; i < 3; ++i) XC[i][j] = col[i];
  }
  const M3 M = mul(G, XC);
  M3 A{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A[i][j] = (M[i][j] - std::conj(M[j][i])) / (2.0 * I);
  return (0.5 * (A[0][1] + A[1][0])).real();
}

}  // namespace

TEST_CASE("sqrt_branch") {
  CHECK(sqrt_branch(1.0, 2.0).value == cplx(2.0, 0.0));
  const cplx ev = sqrt_branch(cplx(-1.0, 0.0), 1.0).value;
  CHECK(std::abs(ev - I) < 1e-15);
  CHECK(std::abs(sqrt_branch(cplx(-1.0, -0.0), 1.0).value - I) < 1e-15);
  const cplx q = sqrt_branch(cplx(1.0, 10.0), 1.0).value;
  CHECK(q.real() > 0.0);
  CHECK(q.imag() > 0.0);
  CHECK(std::abs(q * q - cplx(1.0, 10.0)) < 1e-13);
}

TEST_CASE("sqrt_branch is continuous in the closed upper half-plane") {
  for (double radius : {0.3, 1.0, 20.0}) {
    cplx prev = branch_sqrt(radius);
    for (int i = 1; i <= 2000; ++i) {
      const double theta = pi * i / 2000.0;
      const cplx z = std::polar(radius, theta);
      const cplx cur = branch_sqrt(cplx(z.real(), std::max(0.0, z.imag())));
      CHECK(std::abs(cur - prev) < 0.01 * std::sqrt(radius));
      CHECK(cur.imag() >= 0.0);
      prev = cur;
    }
  }
}

TEST_CASE("green_1d examples and reciprocity") {
  const auto vac = MaterialModel::vacuum();
  CHECK(std::abs(green_1d(0.3, 0.3, 1.0, vac).g - 0.5 * I) < 1e-15);
  CHECK(std::abs(green_1d(0.0, pi, 1.0, vac).g + 0.5 * I) < 1e-15);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> pos(-4.0, 4.0);
  for (int i = 0; i < 50; ++i) {
    const double x = pos(rng), xp = pos(rng);
    CHECK(green_1d(x, xp, 0.8, kLorentz).g == green_1d(xp, x, 0.8, kLorentz).g);
  }
}

TEST_CASE("Helmholtz residual converges at second order and the jump is -1") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> wdist(0.2, 3.0), ddist(0.1, 5.0);
  const std::vector<MaterialModel> models = {kLorentz, MaterialModel::lorentz(2.0, 1.5, 0.3),
                                             MaterialModel::conductivity(1.0, 1.0)};
  for (int trial = 0; trial < 20; ++trial) {
    const auto& m = models[trial % models.size()];
    const double w = wdist(rng), d = ddist(rng);
    const cplx eps = permittivity(m, w);
    auto residual = [&](double h) {
      auto g = [&](double x) { return green_1d(x, 0.0, w, m).g; };
      return std::abs((g(d + h) - 2.0 * g(d) + g(d - h)) / (h * h) + w * w * eps * g(d));
    };
    // Steps scaled to the local wavelength keep truncation well above round-off.
    const double hq = 0.01 / std::abs(sqrt_branch(eps, w).value);
    const double r1 = residual(2.0 * hq), r2 = residual(hq);
    CHECK(std::log2(r1 / r2) >= 1.9);
  }
  for (const auto& m : models) {
    const double h = 1e-7;
    auto g = [&](double x) { return green_1d(x, 0.0, 1.3, m).g; };
    // One-sided second-order differences on each side of the source.
    const cplx right = (-3.0 * g(0.0) + 4.0 * g(h) - g(2 * h)) / (2 * h);
    const cplx left = (3.0 * g(0.0) - 4.0 * g(-h) + g(-2 * h)) / (2 * h);
    CHECK(std::abs(right - left + 1.0) < 1e-6);
  }
}

TEST_CASE("green_1d_k") {
  CHECK(std::abs(green_1d_k(1.0, 1.0, cplx(1.0, 1.0)) - I) < 1e-15);
  const double k = 1e5;
  CHECK(green_1d_k(k, 1.0, cplx(2.0, 1.0)).real() * k * k == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(green_1d_k(2.0, 1.0, cplx(4.0, 0.0)), PoleError);
  for (double kk = -6.0; kk <= 6.0; kk += 0.25)
    for (double w = 0.05; w <= 5.0; w += 0.15) CHECK(green_1d_k(kk, w, permittivity(kLorentz, w)).imag() > 0.0);
}

namespace {

// Closed form of Im eps * int g(x-x1) g*(x'-x1) dx1 for x <= x'.
double identity_lhs_closed(double x, double xp, double w, cplx eps) {
  const cplx q = sqrt_branch(eps, w).value;
  const double alpha = q.real(), beta = q.imag();
  const double nq2 = std::norm(q);
  // x1 < x: e^{iq(x-x1)} e^{-iq*(x'-x1)}.
  const cplx left = std::exp(I * q * x - I * std::conj(q) * xp) * std::exp(2 * beta * x) / (2 * beta);
  // x1 > x': e^{iq(x1-x)} e^{-iq*(x1-x')}.
  const cplx right = std::exp(-I * q * x + I * std::conj(q) * xp) * std::exp(-2 * beta * xp) / (2 * beta);
  // x < x1 < x': e^{iq(x1-x)} e^{-iq*(x'-x1)}.
  cplx mid = 0.0;
  if (xp > x) {
    const cplx pre = std::exp(-I * q * x - I * std::conj(q) * xp);
    mid = pre * (alpha != 0.0 ? (std::exp(2.0 * I * alpha * xp) - std::exp(2.0 * I * alpha * x)) / (2.0 * I * alpha)
                              : cplx(xp - x));
  }
  return eps.imag() * ((left + right + mid) / (4.0 * nq2)).real();
}

}  // namespace

TEST_CASE("Green identity against the closed form") {
  for (double sep : {0.0, 2.0}) {
    const IdentityCheck c = green_identity_check(0.0, sep, 1.0, kLorentz);
    CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-8));
    CHECK(c.lhs == doctest::Approx(identity_lhs_closed(0.0, sep, 1.0, permittivity(kLorentz, 1.0))).epsilon(1e-8));
    CHECK(std::abs(c.lhs_imag) < 1e-8 * std::abs(c.lhs));
  }
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> wdist(0.2, 3.0), xdist(-3.0, 3.0);
  const std::vector<MaterialModel> models = {kLorentz, MaterialModel::lorentz(2.0, 1.5, 0.3),
                                             MaterialModel::conductivity(1.0, 1.0), MaterialModel::lorentz(0.5, 2.0, 1.0)};
  for (int i = 0; i < 10; ++i) {
    const auto& m = models[i % models.size()];
    const double w = wdist(rng), x = xdist(rng), xp = xdist(rng);
    const IdentityCheck c = green_identity_check(x, xp, w, m);
    CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-6));
    const double closed = identity_lhs_closed(std::min(x, xp), std::max(x, xp), w, permittivity(m, w));
    CHECK(c.lhs == doctest::Approx(closed).epsilon(1e-6));
  }
}

TEST_CASE("Green identity approaches the vacuum limit continuously") {
  const double w = 1.0, d = 1.5;
  const double vacuum = std::cos(w * d) / (2.0 * w * w * w);
  double prev_gap = std::numeric_limits<double>::infinity();
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const IdentityCheck c = green_identity_check(0.0, d, w, cplx(1.0, delta));
    CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-6));
    const double gap = std::abs(c.lhs - vacuum);
    CHECK(gap < prev_gap);
    CHECK(gap < 2.0 * delta);
    prev_gap = gap;
  }
  CHECK_THROWS_AS(green_identity_check(0.0, 1.0, 1.0, MaterialModel::vacuum()), DomainError);
}

TEST_CASE("fresnel_rp") {
  // Normal incidence against interface matching: E continuity 1 + r = t and
  // H continuity 1 - r = n t give r_E = (1 - n)/(1 + n); r_p is its negative.
  for (double e : {1.0, 2.0, 4.0, 11.5}) {
    const double n = std::sqrt(e);
    const double r_e = (1.0 - n) / (1.0 + n);
    CHECK(std::abs(fresnel_rp(cplx(e, 0.0), 0.0, 1.3) + r_e) < 1e-15);
  }
  CHECK(std::abs(fresnel_rp(cplx(2.0, 0.0), 1e4, 1.0) - 1.0 / 3.0) < 1e-6);
  CHECK(std::abs(fresnel_rp(cplx(1.0, 10.0), 1e4, 1.0).imag() - 20.0 / 104.0) < 1e-6);
  CHECK(fresnel_rp(kLorentz, 3.0, -0.7) == std::conj(fresnel_rp(kLorentz, 3.0, 0.7)));
}

TEST_CASE("rp_electrostatic") {
  CHECK(rp_electrostatic(MaterialModel::vacuum(), 2.0) == cplx(0.0, 0.0));
  const cplx r = rp_electrostatic(kLorentz, 1.0);
  CHECK(std::abs(r - cplx(0.0, 10.0) / cplx(2.0, 10.0)) < 1e-15);
  CHECK(r.imag() == doctest::Approx(20.0 / 104.0));
  for (double w : {0.1, 0.9, 3.0}) CHECK(rp_electrostatic(kLorentz, -w) == std::conj(rp_electrostatic(kLorentz, w)));
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> wd(0.05, 5.0);
  for (int i = 0; i < 100; ++i) {
    const MaterialModel& m = (i % 2) ? kLorentz : MaterialModel::conductivity(1.0, 1.0);
    const double w = wd(rng);
    CHECK(std::abs(fresnel_rp(m, 1e4 * w, w) - rp_electrostatic(m, w)) < 1e-6);
  }
}

namespace {

// Characteristic-matrix oracle for a slab of index n and thickness d in vacuum.
SlabRT slab_matrix(cplx eps, double d, double w) {
  const cplx n = branch_sqrt(eps);
  const cplx delta = w * n * d;
  const cplx m11 = std::cos(delta), m22 = std::cos(delta);
  const cplx m12 = -I * std::sin(delta) / n, m21 = -I * n * std::sin(delta);
  const cplx den = m11 + m12 + m21 + m22;
  return {(m11 + m12 - m21 - m22) / den, 2.0 / den};
}

}  // namespace

TEST_CASE("slab_rt") {
  const SlabRT vac = slab_rt(MaterialModel::vacuum(), 1.7, 2.0);
  CHECK(std::abs(vac.r) < 1e-15);
  CHECK(std::abs(vac.t - std::exp(I * 2.0 * 1.7)) < 1e-15);

  const double w = 1.0;
  const double quarter = pi / (2.0 * w * 2.0);
  const SlabRT q = slab_rt(cplx(4.0, 0.0), quarter, w);
  CHECK(std::norm(q.r) + std::norm(q.t) == doctest::Approx(1.0).epsilon(1e-14));

  const SlabRT lossy = slab_rt(kLorentz, 0.8, 1.0);
  CHECK(std::norm(lossy.r) + std::norm(lossy.t) < 1.0);
  for (cplx eps : {cplx(4.0, 0.0), permittivity(kLorentz, 1.0), cplx(2.0, 0.3)}) {
    const SlabRT a = slab_rt(eps, 0.8, 1.1);
    const SlabRT b = slab_matrix(eps, 0.8, 1.1);
    CHECK(std::abs(std::abs(a.r) - std::abs(b.r)) < 1e-13);
    // The matrix form references the exit face, so compare |t| and |r|.
    CHECK(std::abs(std::abs(a.t) - std::abs(b.t)) < 1e-13);
  }
}

TEST_CASE("plate_flux_term") {
  PlanarScenario s;
  s.left = {MaterialModel::conductivity(1.0, 1.0), 0.01};
  s.right = MaterialModel::conductivity(1.0, 1.0);
  s.gap = 1.0;
  s.k_y = 5.0;
  s.k_par = 5.0;
  const FluxTerm f = plate_flux_term(s, 0.02);
  CHECK(f.value < 0.0);
  CHECK_FALSE(f.regime_warning);
  CHECK(f.kappa == 5.0);
  CHECK_THROWS_AS(plate_flux_term(s, 0.06), DomainError);
  CHECK_THROWS_AS(plate_flux_term(s, 0.0), DomainError);
  PlanarScenario still = s;
  still.left.velocity = 0.0;
  CHECK_THROWS_AS(plate_flux_term(still, 0.02), DomainError);

  for (double kz : {0.0, 3.3}) {
    PlanarScenario t = s;
    t.k_par = std::hypot(t.k_y, kz);
    const double w = 0.02;
    const FluxTerm v = plate_flux_term(t, w);
    const cplx r = rp_electrostatic(t.right, w);
    const cplx rm = rp_electrostatic(t.left.rest, w - t.left.velocity * t.k_y);
    for (double x : {0.2, 0.5, 0.9}) {
      const double oracle = two_reflection_flux(w, t.k_y, kz, t.gap, x, r, rm);
      CHECK(v.value == doctest::Approx(oracle).epsilon(1e-3));
    }
  }

  // Below k_par/k0 = 100 the full kappa is used and flagged.
  PlanarScenario near = s;
  near.k_par = 1.0;
  near.k_y = 1.0;
  near.left.velocity = 0.5;
  const FluxTerm warned = plate_flux_term(near, 0.1);
  CHECK(warned.regime_warning);
  CHECK(warned.kappa == doctest::Approx(std::sqrt(1.0 - 0.01)));
}
