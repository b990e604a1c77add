#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>

namespace mqed::quad {

using cplx = std::complex<double>;
using Integrand = std::function<cplx(double)>;
using Integrand2D = std::function<cplx(double, double)>;

/// Tolerances and hints shared by every integrator in this namespace.
struct QuadSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 4000;
  /// e-folding length of an exponentially decaying semi-infinite integrand.
  std::optional<double> decay_scale;
  /// f(x) ~ x^-p at large x; selects panel doubling in semi_infinite_quad.
  std::optional<double> decay_power;
  /// Number of equal panels the interval is cut into before adaptive
  /// refinement starts. Oscillatory callers use it to resolve the period.
  int initial_panels = 1;
  /// Integrand may be evaluated from several threads at once. Only
  /// quad_2d_product makes use of it (outer nodes run in parallel).
  bool reentrant = false;

  /// Throws InputError when a tolerance or the subdivision budget is invalid.
  void validate() const;

  /// Same spec with both tolerances scaled, used for nested integrals.
  [[nodiscard]] QuadSpec tightened(double factor) const;
};

struct QuadResult {
  cplx value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;

  QuadResult& operator+=(const QuadResult& other);
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
/// The error estimate is the raw |K15 - G7| difference summed over panels.
/// Non-convergence is reported through `converged`, never thrown.
QuadResult adaptive_quad(const Integrand& f, double a, double b, const QuadSpec& spec);

/// Cauchy principal value of the integral of f over [a, b] with a simple pole
/// at s. f(x)(x - s) must be continuous across s. The window [s-h, s+h] is
/// folded onto [0, h] so the odd singular part cancels exactly; the default
/// half width is half the distance to the nearer endpoint.
QuadResult pv_quad(const Integrand& f, double a, double b, double s, const QuadSpec& spec,
                   std::optional<double> half_width = std::nullopt);

/// Integral over [a, inf). With spec.decay_scale = L the substitution
/// x = a - L ln(u) maps onto (0, 1]; otherwise panels of doubling width are
/// summed until two successive panels fall below tolerance, and a power-law
/// tail correction is added when spec.decay_power is known.
/// Throws DivergenceSuspected when the panel sums fail to settle.
QuadResult semi_infinite_quad(const Integrand& f, double a, const QuadSpec& spec);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  [[nodiscard]] bool semi_infinite() const { return hi == std::numeric_limits<double>::infinity(); }
};

/// Iterated integral of f(u, v) with v in v_range(u). The outer range may be
/// semi-infinite (spec.decay_scale then refers to u). Inner integrals run at
/// a tenth of the outer tolerance and their error estimates are integrated
/// alongside the values.
QuadResult quad_2d_product(const Integrand2D& f, Range u_range,
                           const std::function<Range(double)>& v_range, const QuadSpec& spec);

}  // namespace mqed::quad
