#include "mqed/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "mqed/errors.hpp"

namespace mqed::quad {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Node i of the 15-point rule on [-1, 1], i = 0..14, ascending.
double node(int i) { return i < 7 ? -kXgk[i] : (i == 7 ? 0.0 : kXgk[14 - i]); }

struct Panel {
  double a = 0.0;
  double b = 0.0;
  cplx value{};
  double error = 0.0;
};

struct PanelRule {
  cplx kronrod{};
  double error = 0.0;
};

// Combine 15 samples (ordered as node(i)) into the K15 value and |K15 - G7|,
// plus an optional per-node nonnegative "carried" error integrated with the
// Kronrod weights.
PanelRule combine(const std::array<cplx, 15>& fv, const std::array<double, 15>* carried,
                  double half) {
  cplx k = fv[7] * kWgk[7];
  cplx g = fv[7] * kWg[3];
  double extra = carried ? (*carried)[7] * kWgk[7] : 0.0;
  for (int j = 0; j < 7; ++j) {
    const cplx s = fv[j] + fv[14 - j];
    k += s * kWgk[j];
    if (j % 2 == 1) g += s * kWg[j / 2];
    if (carried) extra += ((*carried)[j] + (*carried)[14 - j]) * kWgk[j];
  }
  PanelRule r;
  r.kronrod = k * half;
  r.error = std::abs((k - g) * half) + extra * std::abs(half);
  return r;
}

template <class PanelEval>
QuadResult adaptive_core(PanelEval&& eval, double a, double b, const QuadSpec& spec,
                         std::size_t evals_per_panel) {
  QuadResult res;
  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(spec.max_subdivisions) + spec.initial_panels + 1);
  auto cmp = [&panels](std::size_t l, std::size_t r) { return panels[l].error < panels[r].error; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);

  cplx total{};
  double total_err = 0.0;
  const int n0 = std::max(1, spec.initial_panels);
  for (int i = 0; i < n0; ++i) {
    const double pa = a + (b - a) * i / n0;
    const double pb = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
    const PanelRule r = eval(pa, pb);
    panels.push_back({pa, pb, r.kronrod, r.error});
    heap.push(panels.size() - 1);
    total += r.kronrod;
    total_err += r.error;
  }
  res.evaluations = evals_per_panel * static_cast<std::size_t>(n0);

  double frozen_err = 0.0;
  int splits = 0;
  auto tolerance = [&](cplx v) { return std::max(spec.abs_tol, spec.rel_tol * std::abs(v)); };
  while (!heap.empty() && total_err > tolerance(total) && splits < spec.max_subdivisions) {
    const std::size_t idx = heap.top();
    heap.pop();
    const Panel p = panels[idx];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b) ||
        (p.b - p.a) < 64.0 * std::numeric_limits<double>::epsilon() *
                          std::max(std::abs(p.a), std::abs(p.b))) {
      // Cannot resolve further; keep its contribution but stop refining it.
      frozen_err += p.error;
      continue;
    }
    const PanelRule left = eval(p.a, mid);
    const PanelRule right = eval(mid, p.b);
    res.evaluations += 2 * evals_per_panel;
    ++splits;
    panels[idx] = {p.a, mid, left.kronrod, left.error};
    panels.push_back({mid, p.b, right.kronrod, right.error});
    heap.push(idx);
    heap.push(panels.size() - 1);
    total += left.kronrod + right.kronrod - p.value;
    total_err += left.error + right.error - p.error;
  }

  // Final sums in a fixed order so the result does not depend on drift.
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  cplx v{};
  double e = 0.0;
  for (const Panel& p : panels) {
    v += p.value;
    e += p.error;
  }
  res.value = v;
  res.error_estimate = e;
  res.converged = e <= tolerance(v) && frozen_err <= tolerance(v);
  return res;
}

void require_finite_interval(double a, double b, const char* who) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw InputError(std::string(who) + ": need finite a < b");
}

}  // namespace

void QuadSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw InputError("QuadSpec: tolerances must be positive");
  if (max_subdivisions < 8) throw InputError("QuadSpec: max_subdivisions must be at least 8");
  if (initial_panels < 1) throw InputError("QuadSpec: initial_panels must be at least 1");
  if (decay_scale && !(*decay_scale > 0.0)) throw InputError("QuadSpec: decay_scale must be positive");
}

QuadSpec QuadSpec::tightened(double factor) const {
  QuadSpec s = *this;
  s.rel_tol *= factor;
  s.abs_tol *= factor;
  return s;
}

QuadResult& QuadResult::operator+=(const QuadResult& other) {
  value += other.value;
  error_estimate += other.error_estimate;
  evaluations += other.evaluations;
  converged = converged && other.converged;
  return *this;
}

QuadResult adaptive_quad(const Integrand& f, double a, double b, const QuadSpec& spec) {
  spec.validate();
  if (a == b) return {cplx{}, 0.0, 0, true};
  require_finite_interval(a, b, "adaptive_quad");
  auto eval = [&f](double pa, double pb) {
    const double c = 0.5 * (pa + pb);
    const double h = 0.5 * (pb - pa);
    std::array<cplx, 15> fv;
    for (int i = 0; i < 15; ++i) fv[i] = f(c + h * node(i));
    return combine(fv, nullptr, h);
  };
  return adaptive_core(eval, a, b, spec, 15);
}

QuadResult pv_quad(const Integrand& f, double a, double b, double s, const QuadSpec& spec,
                   std::optional<double> half_width) {
  spec.validate();
  require_finite_interval(a, b, "pv_quad");
  if (!(a < s && s < b)) throw InputError("pv_quad: singular point must lie inside (a, b)");
  const double room = std::min(s - a, b - s);
  double h = half_width.value_or(0.5 * room);
  if (!(h > 0.0) || h > room) throw InputError("pv_quad: half width must lie in (0, min(s-a, b-s)]");

  auto folded = [&f, s](double u) { return f(s + u) + f(s - u); };
  QuadResult r = adaptive_quad(folded, 0.0, h, spec);
  r.evaluations *= 2;
  if (s - h > a) r += adaptive_quad(f, a, s - h, spec);
  if (s + h < b) r += adaptive_quad(f, s + h, b, spec);
  return r;
}

QuadResult semi_infinite_quad(const Integrand& f, double a, const QuadSpec& spec) {
  spec.validate();
  if (!std::isfinite(a)) throw InputError("semi_infinite_quad: lower limit must be finite");

  if (spec.decay_scale) {
    const double L = *spec.decay_scale;
    auto mapped = [&f, a, L](double u) -> cplx {
      if (u <= 0.0) return {};
      const double x = a - L * std::log(u);
      if (!std::isfinite(x)) return {};
      return f(x) * (L / u);
    };
    return adaptive_quad(mapped, 0.0, 1.0, spec);
  }

  const std::optional<double> p = spec.decay_power;
  if (p && *p <= 1.0)
    throw DivergenceSuspected("semi_infinite_quad: algebraic decay power must exceed 1");

  // Doubling panels [a, a+w], [a+w, a+3w], ...; with a known power the
  // remaining tail X f(X)/(p-1) is added and the Cauchy test is applied to
  // the corrected sum.
  auto tail_at = [&](double x) -> cplx {
    if (!p) return {};
    return f(x) * (x / (*p - 1.0));
  };
  const double w0 = std::max(1.0, std::abs(a));
  QuadResult acc{cplx{}, 0.0, 0, true};
  double x = a;
  double w = w0;
  cplx previous = tail_at(a);
  acc.evaluations += p ? 1 : 0;
  int quiet = 0;
  constexpr int kMaxPanels = 120;
  for (int n = 0; n < kMaxPanels; ++n) {
    const QuadResult panel = adaptive_quad(f, x, x + w, spec);
    acc += panel;
    x += w;
    w *= 2.0;
    const cplx tail = tail_at(x);
    if (p) ++acc.evaluations;
    const cplx corrected = acc.value + tail;
    const double change = std::abs(corrected - previous);
    previous = corrected;
    if (n > 0 && change <= std::max(spec.abs_tol, spec.rel_tol * std::abs(corrected))) {
      if (++quiet >= 2) {
        acc.value = corrected;
        acc.error_estimate += change + (p ? 0.0 : std::abs(tail));
        return acc;
      }
    } else {
      quiet = 0;
    }
  }
  throw DivergenceSuspected("semi_infinite_quad: panel sums did not settle");
}

QuadResult quad_2d_product(const Integrand2D& f, Range u_range,
                           const std::function<Range(double)>& v_range, const QuadSpec& spec) {
  spec.validate();
  const QuadSpec inner = spec.tightened(0.1);
  QuadSpec inner_nodecay = inner;
  inner_nodecay.decay_scale.reset();
  inner_nodecay.decay_power.reset();
  inner_nodecay.initial_panels = 1;

  // The outer variable may be mapped; `to_u` gives (u, du/dt).
  double L = 0.0;
  double t_lo = u_range.lo;
  double t_hi = u_range.hi;
  if (u_range.semi_infinite()) {
    if (!spec.decay_scale) throw InputError("quad_2d_product: infinite outer range needs decay_scale");
    L = *spec.decay_scale;
    t_lo = 0.0;
    t_hi = 1.0;
  } else {
    require_finite_interval(u_range.lo, u_range.hi, "quad_2d_product");
  }
  auto outer_point = [&](double t, cplx& value, double& err, std::size_t& evals, bool& ok) {
    double u = t;
    double jac = 1.0;
    if (L > 0.0) {
      if (t <= 0.0) {
        value = {};
        err = 0.0;
        return;
      }
      u = u_range.lo - L * std::log(t);
      jac = L / t;
    }
    const Range vr = v_range(u);
    if (!(vr.hi > vr.lo)) {
      value = {};
      err = 0.0;
      return;
    }
    const QuadResult r = adaptive_quad([&f, u](double v) { return f(u, v); }, vr.lo, vr.hi, inner_nodecay);
    value = r.value * jac;
    err = r.error_estimate * jac;
    evals += r.evaluations;
    ok = ok && r.converged;
  };

  std::size_t inner_evals = 0;
  bool inner_ok = true;
  auto eval = [&](double pa, double pb) {
    const double c = 0.5 * (pa + pb);
    const double h = 0.5 * (pb - pa);
    std::array<cplx, 15> fv;
    std::array<double, 15> ev;
    std::array<std::size_t, 15> counts{};
    std::array<bool, 15> oks;
    oks.fill(true);
#pragma omp parallel for schedule(static) if (spec.reentrant)
    for (int i = 0; i < 15; ++i) outer_point(c + h * node(i), fv[i], ev[i], counts[i], oks[i]);
    for (int i = 0; i < 15; ++i) {
      inner_evals += counts[i];
      inner_ok = inner_ok && oks[i];
    }
    return combine(fv, &ev, h);
  };
  QuadSpec outer = spec;
  QuadResult r = adaptive_core(eval, t_lo, t_hi, outer, 0);
  r.evaluations = inner_evals;
  r.converged = r.converged && inner_ok;
  return r;
}

}  // namespace mqed::quad
