#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mqed/quadrature.hpp"

namespace mqed {

using cplx = std::complex<double>;

struct LorentzResonance {
  double omega0 = 1.0;
  double omegaP = 1.0;
  double gamma = 0.1;
};

struct ConductivityModel {
  double sigma = 1.0;
  double eps_b = 1.0;
};

/// Causal permittivity model. Values are immutable once constructed; the
/// factories enforce the physical invariants.
class MaterialModel {
 public:
  enum class Kind { vacuum, lorentz, conductivity };

  MaterialModel() = default;  // vacuum

  static MaterialModel vacuum() { return {}; }
  static MaterialModel lorentz(std::vector<LorentzResonance> resonances);
  static MaterialModel lorentz(double omega0, double omegaP, double gamma) {
    return lorentz(std::vector<LorentzResonance>{{omega0, omegaP, gamma}});
  }
  static MaterialModel conductivity(double sigma, double eps_b = 1.0);

  /// Skips the invariant checks. Only for tests that need an acausal model
  /// (negative damping puts the poles in the upper half-plane).
  static MaterialModel unchecked_lorentz(std::vector<LorentzResonance> resonances);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const std::vector<LorentzResonance>& resonances() const { return resonances_; }
  [[nodiscard]] const ConductivityModel& conductivity_params() const { return conductivity_; }

  /// Limit of epsilon at large |omega|.
  [[nodiscard]] double eps_infinity() const;
  /// Largest frequency at which the response has structure: max(omega0 + gamma)
  /// over resonances, sigma/(1 + eps_b) for a conductor, 0 for vacuum.
  [[nodiscard]] double material_frequency() const;
  [[nodiscard]] std::string describe() const;

 private:
  Kind kind_ = Kind::vacuum;
  std::vector<LorentzResonance> resonances_;
  ConductivityModel conductivity_;
};

/// epsilon(omega) for Im omega >= 0. Re omega < 0 is evaluated through
/// epsilon(omega) = conj(epsilon(-conj(omega))).
cplx permittivity(const MaterialModel& model, cplx omega);
inline cplx permittivity(const MaterialModel& model, double omega) {
  return permittivity(model, cplx(omega, 0.0));
}

/// Time-domain susceptibility chi(tau), closed form per resonance
/// (oscillatory, critical or overdamped).
double susceptibility_time(const MaterialModel& model, double tau);

/// alpha(omega) = sqrt(2 omega Im eps / pi).
double reservoir_coupling(const MaterialModel& model, double omega);

struct KKOptions {
  /// Tail-dominated threshold: Omega_max * |integrand(Omega_max)| against
  /// this fraction of the larger of the accumulated integral and the last
  /// decade's contribution.
  double tail_fraction = 0.02;
  quad::QuadSpec spec{1e-9, 1e-13, 20000};
};

/// Im epsilon sampled on an ascending grid (typically starting at 0),
/// interpolated with a natural cubic spline. Below the first sample the
/// spectrum is taken as zero.
class SampledSpectrum {
 public:
  SampledSpectrum(std::vector<double> omega, std::vector<double> values);
  ~SampledSpectrum();
  SampledSpectrum(const SampledSpectrum&) = delete;
  SampledSpectrum& operator=(const SampledSpectrum&) = delete;
  SampledSpectrum(SampledSpectrum&&) noexcept;
  SampledSpectrum& operator=(SampledSpectrum&&) noexcept;

  /// Uniform sampling of Im epsilon of `model` on [lo, hi].
  static SampledSpectrum of(const MaterialModel& model, double lo, double hi, std::size_t n);

  [[nodiscard]] double operator()(double omega) const;
  [[nodiscard]] double lo() const;
  [[nodiscard]] double hi() const;
  /// Largest spacing between consecutive samples.
  [[nodiscard]] double spacing() const;
  [[nodiscard]] const std::vector<double>& omega() const;
  [[nodiscard]] const std::vector<double>& values() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Re epsilon(omega) - 1 from the sampled imaginary part via the principal
/// value integral, with a fitted power-law tail beyond the last sample.
/// Throws TailDominated when the spectrum decays too slowly for the tail
/// estimate to be trusted, DomainError when omega is outside the samples.
double kk_real_from_imag(const SampledSpectrum& imag_eps, double omega, const KKOptions& opts = {});

/// Same integral for a callable Im epsilon given on [lo, omega_max].
/// `resolution` plays the role of the grid spacing in the window choice.
double kk_real_from_imag(const std::function<double(double)>& imag_eps, double lo, double omega_max,
                         double resolution, double omega, const KKOptions& opts = {});

struct Rect {
  double re_min = -5.0;
  double re_max = 5.0;
  double im_min = 0.01;
  double im_max = 5.0;
};

struct WindingResult {
  /// Winding of epsilon around 0 along the rectangle: zeros minus poles.
  int net = 0;
  /// Winding of epsilon times its denominator polynomial: zeros of epsilon.
  int zeros = 0;
  /// Winding of the denominator polynomial: poles of epsilon.
  int poles = 0;
  std::size_t samples = 0;
};

/// Argument-principle winding numbers along the boundary of `rect`, starting
/// from n_contour points and bisecting any step whose phase change reaches
/// pi/2. Throws RefinementFailure past `max_samples`.
WindingResult analyticity_check(const MaterialModel& model, const Rect& rect, int n_contour = 400,
                                std::size_t max_samples = 1u << 20);

struct DopplerMaterial {
  MaterialModel rest;
  double velocity = 0.0;
};

/// Rest-frame epsilon at the shifted frequency omega - V k.
cplx doppler_permittivity(const DopplerMaterial& dm, double k, double omega);

}  // namespace mqed
