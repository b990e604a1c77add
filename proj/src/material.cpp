#include "mqed/material.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mqed/errors.hpp"

namespace mqed {

namespace {

constexpr double kPi = std::numbers::pi;

void check_resonance(const LorentzResonance& r) {
  if (!(r.omega0 > 0.0) || !(r.omegaP >= 0.0) || !(r.gamma > 0.0))
    throw InputError("lorentz resonance needs omega0 > 0, omegaP >= 0, gamma > 0");
}

// Formula evaluation without the reality-condition fold.
cplx eps_formula(const MaterialModel& m, cplx w) {
  switch (m.kind()) {
    case MaterialModel::Kind::vacuum:
      return 1.0;
    case MaterialModel::Kind::lorentz: {
      cplx e = 1.0;
      for (const auto& r : m.resonances())
        e += r.omegaP * r.omegaP / (r.omega0 * r.omega0 - w * w - cplx(0.0, r.gamma) * w);
      return e;
    }
    case MaterialModel::Kind::conductivity: {
      const auto& c = m.conductivity_params();
      return c.eps_b + cplx(0.0, c.sigma) / w;
    }
  }
  return 1.0;
}

}  // namespace

MaterialModel MaterialModel::lorentz(std::vector<LorentzResonance> resonances) {
  if (resonances.empty()) throw InputError("lorentz model needs at least one resonance");
  for (const auto& r : resonances) check_resonance(r);
  return unchecked_lorentz(std::move(resonances));
}

MaterialModel MaterialModel::unchecked_lorentz(std::vector<LorentzResonance> resonances) {
  MaterialModel m;
  m.kind_ = Kind::lorentz;
  m.resonances_ = std::move(resonances);
  return m;
}

MaterialModel MaterialModel::conductivity(double sigma, double eps_b) {
  if (!(sigma > 0.0) || !(eps_b >= 1.0)) throw InputError("conductivity model needs sigma > 0, eps_b >= 1");
  MaterialModel m;
  m.kind_ = Kind::conductivity;
  m.conductivity_ = {sigma, eps_b};
  return m;
}

double MaterialModel::eps_infinity() const {
  return kind_ == Kind::conductivity ? conductivity_.eps_b : 1.0;
}

double MaterialModel::material_frequency() const {
  switch (kind_) {
    case Kind::vacuum:
      return 0.0;
    case Kind::conductivity:
      return conductivity_.sigma / (1.0 + conductivity_.eps_b);
    case Kind::lorentz: {
      double w = 0.0;
      for (const auto& r : resonances_) w = std::max(w, r.omega0 + std::abs(r.gamma));
      return w;
    }
  }
  return 0.0;
}

std::string MaterialModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::vacuum:
      os << "vacuum";
      break;
    case Kind::conductivity:
      os << "conductivity(sigma=" << conductivity_.sigma << ",eps_b=" << conductivity_.eps_b << ")";
      break;
    case Kind::lorentz:
      os << "lorentz(";
      for (std::size_t i = 0; i < resonances_.size(); ++i) {
        const auto& r = resonances_[i];
        os << (i ? ";" : "") << r.omega0 << "," << r.omegaP << "," << r.gamma;
      }
      os << ")";
      break;
  }
  return os.str();
}

cplx permittivity(const MaterialModel& model, cplx omega) {
  if (omega.imag() < 0.0) throw DomainError("permittivity: omega in the lower half-plane");
  if (model.kind() == MaterialModel::Kind::conductivity && omega == cplx(0.0, 0.0))
    throw PoleError("permittivity: conductivity model has a pole at omega = 0");
  if (omega.real() < 0.0) return std::conj(eps_formula(model, -std::conj(omega)));
  return eps_formula(model, omega);
}

double susceptibility_time(const MaterialModel& model, double tau) {
  if (!(tau >= 0.0)) throw DomainError("susceptibility_time: tau must be >= 0");
  switch (model.kind()) {
    case MaterialModel::Kind::vacuum:
      return 0.0;
    case MaterialModel::Kind::conductivity:
      throw UnsupportedModel("susceptibility_time: conductivity response has a step-function part");
    case MaterialModel::Kind::lorentz:
      break;
  }
  double chi = 0.0;
  for (const auto& r : model.resonances()) {
    const double wp2 = r.omegaP * r.omegaP;
    const double damp = std::exp(-0.5 * r.gamma * tau);
    const double disc = r.omega0 * r.omega0 - 0.25 * r.gamma * r.gamma;
    if (disc > 0.0) {
      const double nu = std::sqrt(disc);
      chi += wp2 / nu * damp * std::sin(nu * tau);
    } else if (disc < 0.0) {
      const double mu = std::sqrt(-disc);
      // e^{-gamma tau/2} sinh(mu tau) written to avoid overflow at large tau.
      chi += wp2 / mu * 0.5 * (std::exp((mu - 0.5 * r.gamma) * tau) - std::exp(-(mu + 0.5 * r.gamma) * tau));
    } else {
      chi += wp2 * tau * damp;
    }
  }
  return chi;
}

double reservoir_coupling(const MaterialModel& model, double omega) {
  if (!(omega > 0.0)) throw DomainError("reservoir_coupling: omega must be > 0");
  const double im = permittivity(model, omega).imag();
  return std::sqrt(std::max(0.0, 2.0 * omega * im / kPi));
}

// ---------------------------------------------------------------- spectra

struct SampledSpectrum::Impl {
  std::vector<double> x;
  std::vector<double> y;
  gsl_spline* spline = nullptr;
  double spacing = 0.0;
  ~Impl() {
    if (spline) gsl_spline_free(spline);
  }
};

SampledSpectrum::SampledSpectrum(std::vector<double> omega, std::vector<double> values)
    : impl_(std::make_unique<Impl>()) {
  if (omega.size() != values.size() || omega.size() < 3)
    throw InputError("SampledSpectrum: need at least 3 samples of matching length");
  for (std::size_t i = 1; i < omega.size(); ++i) {
    if (!(omega[i] > omega[i - 1])) throw InputError("SampledSpectrum: omega must be strictly ascending");
    impl_->spacing = std::max(impl_->spacing, omega[i] - omega[i - 1]);
  }
  if (omega.front() < 0.0) throw InputError("SampledSpectrum: omega must be >= 0");
  impl_->x = std::move(omega);
  impl_->y = std::move(values);
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  impl_->spline = gsl_spline_alloc(gsl_interp_cspline, impl_->x.size());
  const int status = gsl_spline_init(impl_->spline, impl_->x.data(), impl_->y.data(), impl_->x.size());
  gsl_set_error_handler(old);
  if (status != GSL_SUCCESS) throw InputError("SampledSpectrum: spline construction failed");
}

SampledSpectrum::~SampledSpectrum() = default;
SampledSpectrum::SampledSpectrum(SampledSpectrum&&) noexcept = default;
SampledSpectrum& SampledSpectrum::operator=(SampledSpectrum&&) noexcept = default;

SampledSpectrum SampledSpectrum::of(const MaterialModel& model, double lo, double hi, std::size_t n) {
  if (n < 3 || !(hi > lo)) throw InputError("SampledSpectrum::of: need n >= 3 and hi > lo");
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    y[i] = (x[i] == 0.0 && model.kind() == MaterialModel::Kind::conductivity)
               ? 0.0
               : permittivity(model, x[i]).imag();
  }
  return {std::move(x), std::move(y)};
}

double SampledSpectrum::operator()(double omega) const {
  if (omega < impl_->x.front()) return 0.0;
  if (omega >= impl_->x.back()) return impl_->y.back();
  // A null accelerator keeps evaluation free of shared state.
  return gsl_spline_eval(impl_->spline, omega, nullptr);
}

double SampledSpectrum::lo() const { return impl_->x.front(); }
double SampledSpectrum::hi() const { return impl_->x.back(); }
double SampledSpectrum::spacing() const { return impl_->spacing; }
const std::vector<double>& SampledSpectrum::omega() const { return impl_->x; }
const std::vector<double>& SampledSpectrum::values() const { return impl_->y; }

// ---------------------------------------------------------------- Kramers-Kronig

namespace {

struct PowerTail {
  double amplitude = 0.0;  // Im eps ~ amplitude / omega^power
  double power = 0.0;
  bool present = false;
};

// Least-squares fit of log Im eps against log omega over [omega_max/10, omega_max].
PowerTail fit_tail(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  PowerTail t;
  if (n < 2) return t;
  const double dn = static_cast<double>(n);
  const double det = dn * sxx - sx * sx;
  if (!(det > 0.0)) return t;
  const double slope = (dn * sxy - sx * sy) / det;
  const double icpt = (sy - slope * sx) / dn;
  t.power = -slope;
  t.amplitude = std::exp(icpt);
  t.present = true;
  return t;
}

// (2/pi) * integral over [omega_max, inf) of w A w^-p / (w^2 - omega^2).
double tail_integral(const PowerTail& t, double omega_max, double omega) {
  if (!t.present) return 0.0;
  const double q = (omega / omega_max) * (omega / omega_max);
  double term = std::pow(omega_max, -t.power);
  double sum = 0.0;
  for (int n = 0; n < 400; ++n) {
    const double add = term / (t.power + 2.0 * n);
    sum += add;
    if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
    term *= q;
  }
  return 2.0 * t.amplitude / kPi * sum;
}

double kk_core(const std::function<double(double)>& im, double lo, double hi, double resolution,
               const PowerTail& tail, double omega, const KKOptions& opts) {
  if (!(omega > lo && omega < hi)) throw DomainError("kk_real_from_imag: omega outside the sampled range");

  // Tail check uses the static kernel so it does not depend on omega.
  const double last = im(hi);
  if (last != 0.0) {
    quad::QuadSpec s = opts.spec;
    const double decade_lo = std::max(lo, 0.1 * hi);
    const quad::QuadResult decade =
        quad::adaptive_quad([&im](double w) { return cplx(im(w) / w, 0.0); }, decade_lo, hi, s);
    const double ratio = std::abs(last) / std::max(std::abs(decade.value.real()), 1e-300);
    if (ratio > opts.tail_fraction || !tail.present || tail.power <= 0.0) {
      std::ostringstream os;
      os << "kk_real_from_imag: spectrum tail too heavy (edge/decade ratio " << ratio
         << ", fitted power " << tail.power << ")";
      throw TailDominated(os.str());
    }
  }

  auto f = [&im, omega](double w) {
    return cplx(2.0 / kPi * w * im(w) / ((w - omega) * (w + omega)), 0.0);
  };
  const double h = std::min({omega / 10.0, 4.0 * resolution, omega - lo, hi - omega});
  const quad::QuadResult pv = quad::pv_quad(f, lo, hi, omega, opts.spec, h);
  return pv.value.real() + (last != 0.0 ? tail_integral(tail, hi, omega) : 0.0);
}

}  // namespace

double kk_real_from_imag(const SampledSpectrum& imag_eps, double omega, const KKOptions& opts) {
  const auto& x = imag_eps.omega();
  const auto& y = imag_eps.values();
  std::vector<double> tx, ty;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= 0.1 * imag_eps.hi()) {
      tx.push_back(x[i]);
      ty.push_back(y[i]);
    }
  }
  const PowerTail tail = fit_tail(tx, ty);
  auto im = [&imag_eps](double w) { return imag_eps(w); };
  return kk_core(im, imag_eps.lo(), imag_eps.hi(), imag_eps.spacing(), tail, omega, opts);
}

double kk_real_from_imag(const std::function<double(double)>& imag_eps, double lo, double omega_max,
                         double resolution, double omega, const KKOptions& opts) {
  if (!(omega_max > lo) || !(resolution > 0.0)) throw InputError("kk_real_from_imag: bad range");
  std::vector<double> tx, ty;
  const double a = std::max(lo, 0.1 * omega_max);
  for (int i = 0; i <= 64; ++i) {
    const double w = a * std::pow(omega_max / a, i / 64.0);
    tx.push_back(w);
    ty.push_back(imag_eps(w));
  }
  const PowerTail tail = fit_tail(tx, ty);
  return kk_core(imag_eps, lo, omega_max, resolution, tail, omega, opts);
}

// ---------------------------------------------------------------- argument principle

namespace {

struct ContourValues {
  cplx eps, numer, denom;
};

ContourValues contour_values(const MaterialModel& m, cplx w) {
  switch (m.kind()) {
    case MaterialModel::Kind::vacuum:
      return {1.0, 1.0, 1.0};
    case MaterialModel::Kind::conductivity: {
      const auto& c = m.conductivity_params();
      const cplx n = c.eps_b * w + cplx(0.0, c.sigma);
      return {n / w, n, w};
    }
    case MaterialModel::Kind::lorentz: {
      const auto& rs = m.resonances();
      std::vector<cplx> d(rs.size());
      cplx denom = 1.0;
      for (std::size_t j = 0; j < rs.size(); ++j) {
        d[j] = rs[j].omega0 * rs[j].omega0 - w * w - cplx(0.0, rs[j].gamma) * w;
        denom *= d[j];
      }
      cplx numer = denom;
      for (std::size_t j = 0; j < rs.size(); ++j) {
        cplx prod = rs[j].omegaP * rs[j].omegaP;
        for (std::size_t i = 0; i < rs.size(); ++i)
          if (i != j) prod *= d[i];
        numer += prod;
      }
      return {eps_formula(m, w), numer, denom};
    }
  }
  return {1.0, 1.0, 1.0};
}

double phase_step(cplx from, cplx to) { return std::arg(to / from); }

struct Accum {
  double net = 0, zeros = 0, poles = 0;
  std::size_t samples = 0;
  std::size_t budget = 0;
};

void walk(const MaterialModel& m, cplx z0, const ContourValues& v0, cplx z1, const ContourValues& v1,
          Accum& acc, int depth) {
  const double d_eps = phase_step(v0.eps, v1.eps);
  const double d_num = phase_step(v0.numer, v1.numer);
  const double d_den = phase_step(v0.denom, v1.denom);
  constexpr double kLimit = 0.5 * kPi;
  if (std::abs(d_eps) < kLimit && std::abs(d_num) < kLimit && std::abs(d_den) < kLimit) {
    acc.net += d_eps;
    acc.zeros += d_num;
    acc.poles += d_den;
    return;
  }
  if (depth > 60 || acc.samples >= acc.budget)
    throw RefinementFailure("analyticity_check: phase steps could not be brought below pi/2");
  const cplx zm = 0.5 * (z0 + z1);
  const ContourValues vm = contour_values(m, zm);
  ++acc.samples;
  walk(m, z0, v0, zm, vm, acc, depth + 1);
  walk(m, zm, vm, z1, v1, acc, depth + 1);
}

}  // namespace

WindingResult analyticity_check(const MaterialModel& model, const Rect& rect, int n_contour,
                                std::size_t max_samples) {
  if (!(rect.im_min > 0.0) || !(rect.im_max > rect.im_min) || !(rect.re_max > rect.re_min))
    throw DomainError("analyticity_check: rectangle must lie strictly in the upper half-plane");
  if (n_contour < 4) throw InputError("analyticity_check: n_contour must be at least 4");
  const std::array<cplx, 5> corners = {cplx(rect.re_min, rect.im_min), cplx(rect.re_max, rect.im_min),
                                       cplx(rect.re_max, rect.im_max), cplx(rect.re_min, rect.im_max),
                                       cplx(rect.re_min, rect.im_min)};
  const double perimeter = 2.0 * ((rect.re_max - rect.re_min) + (rect.im_max - rect.im_min));
  Accum acc;
  acc.budget = max_samples;
  cplx z = corners[0];
  ContourValues v = contour_values(model, z);
  acc.samples = 1;
  for (int side = 0; side < 4; ++side) {
    const cplx a = corners[side];
    const cplx b = corners[side + 1];
    const int n = std::max(1, static_cast<int>(std::ceil(n_contour * std::abs(b - a) / perimeter)));
    for (int i = 1; i <= n; ++i) {
      const cplx zn = (i == n) ? b : a + (b - a) * (static_cast<double>(i) / n);
      const ContourValues vn = contour_values(model, zn);
      ++acc.samples;
      walk(model, z, v, zn, vn, acc, 0);
      z = zn;
      v = vn;
    }
  }
  WindingResult r;
  r.net = static_cast<int>(std::lround(acc.net / (2.0 * kPi)));
  r.zeros = static_cast<int>(std::lround(acc.zeros / (2.0 * kPi)));
  r.poles = static_cast<int>(std::lround(acc.poles / (2.0 * kPi)));
  r.samples = acc.samples;
  return r;
}

cplx doppler_permittivity(const DopplerMaterial& dm, double k, double omega) {
  if (!(std::abs(dm.velocity) < 1.0)) throw DomainError("doppler_permittivity: |V| must be < 1");
  return permittivity(dm.rest, cplx(omega - dm.velocity * k, 0.0));
}

}  // namespace mqed
