#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <vector>

#include "rhv/quadrature/gauss_legendre.hpp"
#include "rhv/quadrature/integrand.hpp"
#include "rhv/quadrature/tail.hpp"

namespace rhv::quad {

template <class Real>
struct Sample {
  Real t;
  Real kernel;     // f(t)
  Real integrand;  // w(t) f(t)
};

template <class Real>
struct QuadResult {
  Real value{0};
  Real truncation_bound{0};         // bound on the integral beyond `cutoff`
  Real discretization_estimate{0};  // panel error estimates plus skipped neighbourhoods
  long evaluations = 0;
  Real cutoff{0};  // effective upper limit actually integrated to
  std::vector<Sample<Real>> samples;

  Real total_error() const { return truncation_bound + discretization_estimate; }
};

struct QuadOptions {
  // Absolute tolerance as a power of ten; 0 means target_digits + 2.
  int tolerance_digits = 0;
  int workers = 1;
  bool record_samples = false;
  int gl_order = 0;  // 0: chosen from the working precision
  int max_tanh_sinh_level = 11;
};

namespace detail {

template <class Real>
struct Panel {
  Real lo, hi;
  bool sing_lo = false, sing_hi = false;
  int depth = 0;
  Real tol;
  bool have_whole = false;
  Real whole{0};  // coarse GL value inherited from the parent
};

template <class Real>
struct PanelOutcome {
  bool accepted = false;
  Real value{0};
  Real estimate{0};
  long evaluations = 0;
  std::vector<Panel<Real>> children;
  std::vector<Sample<Real>> samples;
};

template <class Real>
class Integrator {
 public:
  Integrator(const IntegrandSpec<Real>& spec, const PrecisionSpec& prec, const QuadOptions& opts)
      : spec_(spec), prec_(prec), opts_(opts),
        rule_(gauss_legendre<Real>(opts.gl_order > 0 ? opts.gl_order
                                                     : gauss_legendre_order(prec.working_digits))) {}

  // Integrates over consecutive segments between `points`; `singular[i]`
  // marks points[i] as a log singularity of f.
  QuadResult<Real> run(const std::vector<Real>& points, const std::vector<bool>& singular,
                       const Real& tol) {
    QuadResult<Real> res;
    const Real total = points.back() - points.front();
    std::vector<Panel<Real>> pending;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
      Real lo = points[i], hi = points[i + 1];
      bool sl = singular[i], sh = singular[i + 1];
      Real seg_tol = tol * (hi - lo) / total;
      // Long segments with a singular end keep the double-exponential rule on
      // a unit piece next to the singularity only.
      if ((sl || sh) && hi - lo > 2) {
        if (sl && sh) {
          Real m1 = lo + 1, m2 = hi - 1;
          pending.push_back(make_panel(lo, m1, true, false, tol * (m1 - lo) / total));
          pending.push_back(make_panel(m1, m2, false, false, tol * (m2 - m1) / total));
          pending.push_back(make_panel(m2, hi, false, true, tol * (hi - m2) / total));
        } else if (sl) {
          Real m = lo + 1;
          pending.push_back(make_panel(lo, m, true, false, tol * (m - lo) / total));
          pending.push_back(make_panel(m, hi, false, false, tol * (hi - m) / total));
        } else {
          Real m = hi - 1;
          pending.push_back(make_panel(lo, m, false, false, tol * (m - lo) / total));
          pending.push_back(make_panel(m, hi, false, true, tol * (hi - m) / total));
        }
      } else {
        pending.push_back(make_panel(lo, hi, sl, sh, seg_tol));
      }
    }

    struct Accepted {
      Real lo, value, estimate;
      std::vector<Sample<Real>> samples;
    };
    std::vector<Accepted> accepted;
    while (!pending.empty()) {
      std::vector<PanelOutcome<Real>> outcomes = process_round(pending);
      std::vector<Panel<Real>> next;
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        auto& o = outcomes[i];
        res.evaluations += o.evaluations;
        if (o.accepted) {
          accepted.push_back({pending[i].lo, o.value, o.estimate, std::move(o.samples)});
        } else {
          if (opts_.record_samples)
            accepted.push_back({pending[i].lo, Real(0), Real(0), std::move(o.samples)});
          for (auto& c : o.children) next.push_back(std::move(c));
        }
      }
      pending = std::move(next);
    }

    // Fixed reduction order: by left endpoint, Neumaier-compensated.
    std::stable_sort(accepted.begin(), accepted.end(),
                     [](const Accepted& x, const Accepted& y) { return x.lo < y.lo; });
    Real sum(0), comp(0), err(0);
    for (auto& a : accepted) {
      using std::abs;
      Real t = sum + a.value;
      if (abs(sum) >= abs(a.value))
        comp += (sum - t) + a.value;
      else
        comp += (a.value - t) + sum;
      sum = t;
      err += a.estimate;
      if (opts_.record_samples)
        for (auto& s : a.samples) res.samples.push_back(std::move(s));
    }
    res.value = sum + comp;
    res.discretization_estimate = err;
    return res;
  }

 private:
  Panel<Real> make_panel(const Real& lo, const Real& hi, bool sl, bool sh, const Real& tol) const {
    Panel<Real> p;
    p.lo = lo;
    p.hi = hi;
    p.sing_lo = sl;
    p.sing_hi = sh;
    p.tol = tol;
    return p;
  }

  std::vector<PanelOutcome<Real>> process_round(const std::vector<Panel<Real>>& pending) const {
    std::vector<PanelOutcome<Real>> out(pending.size());
    const int workers = std::max(1, opts_.workers);
    if (workers == 1 || pending.size() < 2) {
      for (std::size_t i = 0; i < pending.size(); ++i) out[i] = process(pending[i]);
      return out;
    }
    std::vector<std::future<void>> jobs;
    const std::size_t n = pending.size();
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t start = 0; start < n; start += chunk) {
      std::size_t stop = std::min(n, start + chunk);
      jobs.push_back(std::async(std::launch::async, [&, start, stop] {
        for (std::size_t i = start; i < stop; ++i) out[i] = process(pending[i]);
      }));
    }
    for (auto& j : jobs) j.get();
    return out;
  }

  PanelOutcome<Real> process(const Panel<Real>& p) const {
    if (p.sing_lo || p.sing_hi) return tanh_sinh_panel(p);
    return gauss_panel(p);
  }

  Real eval(const Real& t, PanelOutcome<Real>& o) const {
    using boost::multiprecision::isfinite;
    using std::isfinite;
    Real f = spec_.kernel(t, prec_);
    Real w = spec_.weight(t);
    Real v = w * f;
    ++o.evaluations;
    if (!isfinite(v)) throw Error(ErrorKind::SingularWeight, "integrand not finite at a node");
    if (opts_.record_samples) o.samples.push_back({t, f, v});
    return v;
  }

  PanelOutcome<Real> gauss_panel(const Panel<Real>& p) const {
    using std::abs;
    PanelOutcome<Real> o;
    auto f = [&](const Real& t) { return eval(t, o); };
    Real mid = (p.lo + p.hi) / 2;
    Real whole = p.have_whole ? p.whole : gauss_legendre_apply(rule_, p.lo, p.hi, f);
    Real left = gauss_legendre_apply(rule_, p.lo, mid, f);
    Real right = gauss_legendre_apply(rule_, mid, p.hi, f);
    Real est = abs(whole - (left + right));
    if (est <= p.tol) {
      o.accepted = true;
      o.value = left + right;
      o.estimate = est;
      return o;
    }
    if (p.depth >= prec_.max_refinement_levels)
      throw Error(ErrorKind::NonConvergent,
                  "quadrature: refinement levels exhausted near t = " + to_decimal(p.lo, 15));
    Panel<Real> l = make_panel(p.lo, mid, false, false, p.tol / 2);
    Panel<Real> r = make_panel(mid, p.hi, false, false, p.tol / 2);
    l.depth = r.depth = p.depth + 1;
    l.have_whole = r.have_whole = true;
    l.whole = left;
    r.whole = right;
    o.children = {std::move(l), std::move(r)};
    return o;
  }

  Real skip_radius(const Real& end, bool singular) const {
    using std::abs;
    Real scale = abs(end) > 1 ? abs(end) : Real(1);
    int digits = singular ? prec_.working_digits - 2 : prec_.working_digits + 5;
    return pow10_neg<Real>(digits) * scale;
  }

  // Tanh-sinh on [lo, hi]; abscissae are formed from their distance to the
  // nearer endpoint so that points next to a singularity keep full accuracy.
  // Points within skip_radius of an endpoint are left out and accounted for
  // by delta (1 + |ln delta|) per singular end.
  PanelOutcome<Real> tanh_sinh_panel(const Panel<Real>& p) const {
    using std::abs;
    using std::cosh;
    using std::exp;
    using std::log;
    using std::sinh;
    PanelOutcome<Real> o;
    const Real d = (p.hi - p.lo) / 2;
    const Real half_pi = pi<Real>() / 2;
    const Real skip_lo = skip_radius(p.lo, p.sing_lo);
    const Real skip_hi = skip_radius(p.hi, p.sing_hi);

    // Sum over nodes u = j h with j odd (or all j at level 0).
    auto level_sum = [&](const Real& h, bool odd_only) {
      Real sum(0);
      if (!odd_only) sum += half_pi * eval(p.lo + d, o);
      for (long j = 1;; j += odd_only ? 2 : 1) {
        Real u = h * j;
        Real v = half_pi * sinh(u);
        Real ev = exp(-2 * v);
        Real delta = d * 2 * ev / (1 + ev);
        Real w = half_pi * cosh(u) * 4 * ev / ((1 + ev) * (1 + ev));
        bool use_hi = delta >= skip_hi;
        bool use_lo = delta >= skip_lo;
        if (!use_hi && !use_lo) break;
        if (use_hi) sum += w * eval(p.hi - delta, o);
        if (use_lo) sum += w * eval(p.lo + delta, o);
      }
      return sum;
    };

    Real h(1);
    Real raw = level_sum(h, false);
    Real prev = raw * h * d;
    for (int level = 1; level <= opts_.max_tanh_sinh_level; ++level) {
      h /= 2;
      raw += level_sum(h, true);
      Real cur = raw * h * d;
      Real est = abs(cur - prev);
      if (level >= 2 && est <= p.tol) {
        o.accepted = true;
        o.value = cur;
        o.estimate = est + skipped_mass(p, skip_lo, skip_hi);
        return o;
      }
      prev = cur;
    }
    // Not converged: split; the half away from a singularity reverts to
    // Gauss-Legendre panels.
    if (p.depth >= prec_.max_refinement_levels)
      throw Error(ErrorKind::NonConvergent,
                  "quadrature: tanh-sinh refinement exhausted near t = " + to_decimal(p.lo, 15));
    Real mid = (p.lo + p.hi) / 2;
    Panel<Real> l = make_panel(p.lo, mid, p.sing_lo, false, p.tol / 2);
    Panel<Real> r = make_panel(mid, p.hi, false, p.sing_hi, p.tol / 2);
    l.depth = r.depth = p.depth + 1;
    o.children = {std::move(l), std::move(r)};
    return o;
  }

  Real skipped_mass(const Panel<Real>& p, const Real& skip_lo, const Real& skip_hi) const {
    using std::abs;
    using std::log;
    Real m(0);
    if (p.sing_lo) m += 8 * skip_lo * (1 + abs(log(skip_lo))) * spec_.weight.sup_from(p.lo);
    if (p.sing_hi) m += 8 * skip_hi * (1 + abs(log(skip_hi))) * spec_.weight.sup_from(p.lo);
    return m;
  }

  const IntegrandSpec<Real>& spec_;
  PrecisionSpec prec_;
  QuadOptions opts_;
  const GaussLegendreRule<Real>& rule_;
};

// Sorted break list on [lo, hi] with singular flags; points closer than the
// working resolution are merged.
template <class Real>
void build_points(const Real& lo, const Real& hi, const std::vector<Real>& singular,
                  const std::vector<Real>& breaks, const PrecisionSpec& prec,
                  std::vector<Real>& points, std::vector<bool>& flags) {
  using std::abs;
  std::vector<std::pair<Real, bool>> all;
  all.push_back({lo, false});
  all.push_back({hi, false});
  for (const Real& s : singular)
    if (s >= lo && s <= hi) all.push_back({s, true});
  for (const Real& b : breaks)
    if (b > lo && b < hi) all.push_back({b, false});
  std::sort(all.begin(), all.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  points.clear();
  flags.clear();
  for (auto& [x, s] : all) {
    Real scale = abs(x) > 1 ? abs(x) : Real(1);
    if (!points.empty() && abs(x - points.back()) <= pow10_neg<Real>(prec.working_digits) * scale) {
      if (s) flags.back() = true;
      continue;
    }
    points.push_back(x);
    flags.push_back(s);
  }
}

template <class Real>
Real tolerance(const PrecisionSpec& prec, const QuadOptions& opts) {
  int digits = opts.tolerance_digits > 0 ? opts.tolerance_digits : prec.target_digits + 2;
  return pow10_neg<Real>(digits);
}

}  // namespace detail

/// Smallest whole T <= t_max at which the tail bound drops below `tol`;
/// t_max when none does.
template <class Real>
Real effective_cutoff(const IntegrandSpec<Real>& spec, const Real& t_max, const Real& tol) {
  using std::ceil;
  for (long t = 1;; ++t) {
    Real tt(t);
    if (tt >= t_max) return t_max;
    if (tail_bound_at(spec, tt) <= tol) return tt;
    if (t > 10000000) return t_max;
  }
}

/// Tolerance-driven cutoff for a decaying-weight integrand, usable before the
/// singular points are known.
template <class Real>
Real effective_cutoff(const Weight<Real>& w, const Envelope& e, const Real& t_max,
                      const PrecisionSpec& prec, const QuadOptions& opts = {}) {
  IntegrandSpec<Real> probe;
  probe.weight = w;
  probe.envelope = e;
  return effective_cutoff(probe, t_max, detail::tolerance<Real>(prec, opts) / 10);
}

template <class Real>
QuadResult<Real> integrate_real_axis_oscillatory(const IntegrandSpec<Real>& spec, const Real& x_max,
                                                 const PrecisionSpec& prec,
                                                 const QuadOptions& opts = {});

/// Integral of w(t) f(t) over [0, T_max] for decaying weights.
///
/// The integration stops at the first whole T whose certified tail is below
/// a tenth of the tolerance; `truncation_bound` bounds the integral beyond
/// that point, so the value stands for both [0, T_max] and [0, oo).
/// Oscillatory weights are handed to integrate_real_axis_oscillatory.
template <class Real>
QuadResult<Real> integrate(const IntegrandSpec<Real>& spec, const Real& t_max,
                           const PrecisionSpec& prec, const QuadOptions& opts = {}) {
  if (!(t_max > 0)) throw Error(ErrorKind::InvalidParams, "integrate: T_max must be positive");
  if (!(spec.weight.a.over_pi() > 0))
    throw Error(ErrorKind::InvalidParams, "integrate: weight parameter must be positive");
  if (spec.weight.kind == WeightKind::UNIT)
    throw Error(ErrorKind::UnboundedTail, "integrate: unit weight needs a finite interval");
  if (!spec.weight.decaying()) return integrate_real_axis_oscillatory(spec, t_max, prec, opts);
  const Real tol = detail::tolerance<Real>(prec, opts);
  Real cutoff = effective_cutoff(spec, t_max, tol / 10);
  std::vector<Real> points;
  std::vector<bool> flags;
  detail::build_points(Real(0), cutoff, spec.singular_points, spec.breakpoints, prec, points, flags);
  detail::Integrator<Real> integ(spec, prec, opts);
  QuadResult<Real> res = integ.run(points, flags, tol);
  using boost::multiprecision::isinf;
  using std::isinf;
  res.truncation_bound = isinf(cutoff) ? Real(0) : tail_bound_at(spec, cutoff);
  res.cutoff = cutoff;
  return res;
}

/// Integral of sin(ax) or cos(ax) times a real-axis integrand over [0, X].
///
/// X_max is snapped down to whole periods of the weight; the integration then
/// stops at the first whole period where the 2^{-x} envelope of ln zeta puts
/// the rest below a tenth of the tolerance. Panels break at every zero of the
/// weight and at the registered singular points.
template <class Real>
QuadResult<Real> integrate_real_axis_oscillatory(const IntegrandSpec<Real>& spec, const Real& x_max,
                                                 const PrecisionSpec& prec,
                                                 const QuadOptions& opts) {
  using std::floor;
  if (spec.weight.kind != WeightKind::SIN && spec.weight.kind != WeightKind::COS)
    throw Error(ErrorKind::InvalidParams, "oscillatory integration needs a sin or cos weight");
  const Real tol = detail::tolerance<Real>(prec, opts);
  const Real half_period = Real(1) / spec.weight.a.over_pi();  // pi / a
  const Real period = 2 * half_period;
  long periods = static_cast<long>(to_double(floor(x_max / period)));
  if (periods < 1) throw Error(ErrorKind::InvalidParams, "X_max is shorter than one period");

  long used = periods;
  for (long k = 1; k <= periods; ++k) {
    Real x = period * k;
    bool ok = true;
    for (const Real& s : spec.real_axis_shifts) ok = ok && (s + x >= 3);
    if (ok && !spec.real_axis_shifts.empty() && real_axis_tail_bound(spec, x) <= tol / 10) {
      used = k;
      break;
    }
  }
  Real cutoff = period * used;

  std::vector<Real> zeros_of_weight;
  Real offset = spec.weight.kind == WeightKind::COS ? Real(1) / 2 : Real(0);
  for (long k = 0;; ++k) {
    Real x = (Real(k) + offset) * half_period;
    if (x >= cutoff) break;
    if (x > 0) zeros_of_weight.push_back(x);
  }
  std::vector<Real> points;
  std::vector<bool> flags;
  detail::build_points(Real(0), cutoff, spec.singular_points, zeros_of_weight, prec, points, flags);
  detail::Integrator<Real> integ(spec, prec, opts);
  QuadResult<Real> res = integ.run(points, flags, tol);
  res.truncation_bound = real_axis_tail_bound(spec, cutoff);
  res.cutoff = cutoff;
  return res;
}

/// Adaptive integral of a smooth callable over [lo, hi] with the panel
/// machinery above; singular endpoints may be flagged.
template <class Real, class F>
QuadResult<Real> integrate_interval(F&& f, const Real& lo, const Real& hi, const PrecisionSpec& prec,
                                    bool singular_lo = false, bool singular_hi = false,
                                    const QuadOptions& opts = {}) {
  IntegrandSpec<Real> spec;
  spec.kind = IntegrandKind::CUSTOM;
  spec.weight.kind = WeightKind::UNIT;
  spec.custom = std::forward<F>(f);
  if (!(hi > lo)) return {};
  std::vector<Real> points{lo, hi};
  std::vector<bool> flags{singular_lo, singular_hi};
  detail::Integrator<Real> integ(spec, prec, opts);
  QuadResult<Real> res = integ.run(points, flags, detail::tolerance<Real>(prec, opts));
  res.cutoff = hi;
  return res;
}

template <class Real, class F>
Real integrate_finite(F&& f, const Real& lo, const Real& hi, const PrecisionSpec& prec) {
  return integrate_interval<Real>(std::forward<F>(f), lo, hi, prec).value;
}

}  // namespace rhv::quad
