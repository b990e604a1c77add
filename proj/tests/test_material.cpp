#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mqed/errors.hpp"
#include "mqed/material.hpp"

using namespace mqed;
using std::numbers::pi;

namespace {

const MaterialModel kLorentz = MaterialModel::lorentz(1.0, 1.0, 0.1);

std::vector<MaterialModel> shipped_models() {
  return {MaterialModel::vacuum(), kLorentz, MaterialModel::lorentz(2.0, 1.5, 0.3),
          MaterialModel::lorentz({{0.5, 0.8, 0.05}, {3.0, 2.0, 0.4}}), MaterialModel::lorentz(1.0, 1.0, 3.0),
          MaterialModel::conductivity(1.0, 1.0), MaterialModel::conductivity(0.3, 2.5)};
}

// chi(tau) = (2/pi) int_0^inf Im eps(w) sin(w tau) dw, trapezoid on a fine grid.
double chi_oracle(const MaterialModel& m, double tau) {
  const double h = 1e-3;
  const double top = 2000.0;
  double sum = 0.0;
  for (double w = h; w < top; w += h) sum += permittivity(m, w).imag() * std::sin(w * tau);
  return 2.0 / pi * sum * h;
}

}  // namespace

TEST_CASE("permittivity examples") {
  CHECK(permittivity(kLorentz, 0.0) == cplx(2.0, 0.0));
  const cplx at_res = permittivity(kLorentz, 1.0);
  CHECK(at_res.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(at_res.imag() == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(permittivity(MaterialModel::vacuum(), cplx(3.0, 2.0)) == cplx(1.0, 0.0));
  const cplx c = permittivity(MaterialModel::conductivity(1.0, 1.0), 1.0);
  CHECK(c == cplx(1.0, 1.0));
}

TEST_CASE("permittivity errors") {
  CHECK_THROWS_AS(permittivity(kLorentz, cplx(1.0, -1e-3)), DomainError);
  CHECK_THROWS_AS(permittivity(MaterialModel::conductivity(1.0), 0.0), PoleError);
  CHECK_THROWS_AS(MaterialModel::lorentz(1.0, 1.0, 0.0), InputError);
  CHECK_THROWS_AS(MaterialModel::conductivity(1.0, 0.5), InputError);
}

TEST_CASE("reality, positivity and the imaginary axis") {
  for (const auto& m : shipped_models()) {
    for (double w : {0.05, 0.3, 1.0, 2.2, 7.0, 40.0}) {
      const cplx plus = permittivity(m, w);
      const cplx minus = permittivity(m, -w);
      CHECK(minus == std::conj(plus));
      // Complex arguments honour the same fold.
      const cplx z(w, 0.2);
      CHECK(std::abs(permittivity(m, -std::conj(z)) - std::conj(permittivity(m, z))) < 1e-14 * std::abs(permittivity(m, z)));
      if (m.kind() != MaterialModel::Kind::vacuum) CHECK(plus.imag() > 0.0);
    }
    double previous = std::numeric_limits<double>::infinity();
    for (double xi = 0.01; xi < 1e4; xi *= 1.5) {
      const cplx e = permittivity(m, cplx(0.0, xi));
      CHECK(std::abs(e.imag()) <= 1e-14 * std::abs(e));
      CHECK(e.real() >= 1.0);
      const double dist = e.real() - m.eps_infinity();
      CHECK(dist >= 0.0);
      CHECK(dist <= previous);
      previous = dist;
    }
    // Conductivity approaches eps_b only as sigma/xi.
    CHECK(previous < 2e-4);
  }
}

TEST_CASE("susceptibility_time") {
  CHECK(susceptibility_time(MaterialModel::vacuum(), 1.0) == 0.0);
  CHECK(susceptibility_time(kLorentz, 0.0) == 0.0);
  const double nu = std::sqrt(1.0 - 0.0025);
  const double tau = pi / (2.0 * nu);
  const double closed = std::exp(-0.05 * tau) / nu;
  CHECK(susceptibility_time(kLorentz, tau) == doctest::Approx(closed).epsilon(1e-14));
  CHECK(chi_oracle(kLorentz, tau) == doctest::Approx(closed).epsilon(1e-4));
  CHECK_THROWS_AS(susceptibility_time(MaterialModel::conductivity(1.0), 1.0), UnsupportedModel);
  CHECK_THROWS_AS(susceptibility_time(kLorentz, -1.0), DomainError);
}

TEST_CASE("susceptibility_time overdamped and critical resonances match the transform") {
  const auto over = MaterialModel::lorentz(1.0, 1.0, 3.0);
  const auto critical = MaterialModel::lorentz(1.0, 1.0, 2.0);
  for (double tau : {0.5, 1.5, 4.0}) {
    CHECK(susceptibility_time(over, tau) == doctest::Approx(chi_oracle(over, tau)).epsilon(2e-4));
    CHECK(susceptibility_time(critical, tau) == doctest::Approx(chi_oracle(critical, tau)).epsilon(2e-4));
  }
}

TEST_CASE("reservoir_coupling") {
  CHECK(reservoir_coupling(MaterialModel::vacuum(), 5.0) == 0.0);
  CHECK(reservoir_coupling(kLorentz, 1.0) == doctest::Approx(std::sqrt(20.0 / pi)).epsilon(1e-14));
  CHECK(reservoir_coupling(MaterialModel::conductivity(1.0, 1.0), 2.0) == doctest::Approx(std::sqrt(2.0 / pi)));
  for (const auto& m : shipped_models())
    for (double w : {0.1, 1.0, 3.3}) {
      const double a = reservoir_coupling(m, w);
      CHECK(a * a * pi / (2.0 * w) == doctest::Approx(permittivity(m, w).imag()).epsilon(1e-14));
    }
}

TEST_CASE("Kramers-Kronig from a sampled Lorentz spectrum") {
  const auto spectrum = SampledSpectrum::of(kLorentz, 0.0, 50.0, 50001);
  const double exact = permittivity(kLorentz, 0.5).real() - 1.0;
  CHECK(kk_real_from_imag(spectrum, 0.5) == doctest::Approx(exact).epsilon(1e-4));

  for (const auto& m : {kLorentz, MaterialModel::lorentz(2.0, 1.5, 0.3)}) {
    const double w0 = m.resonances()[0].omega0;
    const auto s = SampledSpectrum::of(m, 0.0, 50.0 * w0, 50001);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double w = w0 * (0.1 + 4.9 * i / 199.0);
      const double ref = permittivity(m, w).real() - 1.0;
      worst = std::max(worst, std::abs(kk_real_from_imag(s, w) - ref) / std::abs(ref));
    }
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("Kramers-Kronig edge cases") {
  std::vector<double> x(101), y(101, 0.0);
  for (int i = 0; i <= 100; ++i) x[i] = 0.5 * i;
  const SampledSpectrum zero(x, y);
  for (double w : {0.3, 2.0, 17.0}) CHECK(kk_real_from_imag(zero, w) == 0.0);

  const auto cond = MaterialModel::conductivity(1.0, 1.0);
  const auto s = SampledSpectrum::of(cond, 0.0, 50.0, 50001);
  CHECK_THROWS_AS(kk_real_from_imag(s, 1.0), TailDominated);
  CHECK_THROWS_AS(kk_real_from_imag(SampledSpectrum::of(kLorentz, 0.0, 50.0, 5001), 60.0), DomainError);

  // Callable form agrees with the sampled one.
  auto im = [](double w) { return permittivity(kLorentz, w).imag(); };
  const double exact = permittivity(kLorentz, 2.0).real() - 1.0;
  CHECK(kk_real_from_imag(im, 0.0, 50.0, 1e-3, 2.0) == doctest::Approx(exact).epsilon(1e-5));
}

TEST_CASE("argument principle") {
  const Rect rect;
  for (const auto& m : shipped_models()) {
    const WindingResult w = analyticity_check(m, rect);
    CHECK(w.net == 0);
    CHECK(w.poles == 0);
    CHECK(w.zeros == 0);
  }
  // Negative damping moves poles and zeros into the upper half-plane.
  const double gamma = -0.1;
  const auto flipped = MaterialModel::unchecked_lorentz({{1.0, 1.0, gamma}});
  const WindingResult w = analyticity_check(flipped, rect);
  int analytic_poles = 0;
  for (double sign : {-1.0, 1.0}) {
    const cplx pole = (cplx(0.0, -gamma) + sign * std::sqrt(cplx(4.0 - gamma * gamma, 0.0))) / 2.0;
    CHECK(std::abs(permittivity(flipped, pole + cplx(1e-9, 0.0))) > 1e6);
    if (pole.real() > rect.re_min && pole.real() < rect.re_max && pole.imag() > rect.im_min && pole.imag() < rect.im_max)
      ++analytic_poles;
  }
  CHECK(analytic_poles == 2);
  CHECK(w.poles == analytic_poles);
  CHECK(w.zeros == 2);
  CHECK(w.net == w.zeros - w.poles);

  CHECK_THROWS_AS(analyticity_check(kLorentz, {-1, 1, -0.5, 1}), DomainError);
  CHECK_THROWS_AS(analyticity_check(kLorentz, rect, 40, 2), RefinementFailure);
}

TEST_CASE("Doppler-shifted permittivity") {
  for (double k : {0.0, 1.0, 7.5}) CHECK(doppler_permittivity({kLorentz, 0.0}, k, 1.3) == permittivity(kLorentz, 1.3));
  const cplx on_res = doppler_permittivity({kLorentz, 0.5}, 2.0, 2.0);
  CHECK(std::abs(on_res - cplx(1.0, 10.0)) < 1e-13);
  const cplx shifted = doppler_permittivity({kLorentz, 0.5}, 6.0, 1.0);
  CHECK(shifted == std::conj(permittivity(kLorentz, 2.0)));
  CHECK_THROWS_AS(doppler_permittivity({kLorentz, 1.0}, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(doppler_permittivity({MaterialModel::conductivity(1.0), 0.5}, 2.0, 1.0), PoleError);
}

TEST_CASE("Doppler permittivity equals the principal-value integral form") {
  // 1 + i Im eps(w) + (2/pi) P int_0^inf W Im eps(W) / (W^2 - w^2) dW at w = omega - V k = -2.
  // Midpoint grid symmetric about |w| gives the principal value directly.
  const double w = 1.0 - 0.5 * 6.0;
  const double h = 1e-3;
  const double top = 2000.0;
  double sum = 0.0;
  for (double W = 0.5 * h; W < top; W += h) sum += W * permittivity(kLorentz, W).imag() / (W * W - w * w);
  const double tail = 0.1 / (3.0 * top * top * top);
  const double re = 1.0 + 2.0 / pi * (sum * h + tail);
  const double im = permittivity(kLorentz, w).imag();
  const cplx oracle(re, im);
  CHECK(std::abs(doppler_permittivity({kLorentz, 0.5}, 6.0, 1.0) - oracle) < 1e-6);
}
