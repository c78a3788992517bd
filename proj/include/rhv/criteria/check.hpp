#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rhv/criteria/contributions.hpp"
#include "rhv/criteria/params.hpp"
#include "rhv/gamma.hpp"
#include "rhv/quadrature.hpp"
#include "rhv/series.hpp"

namespace rhv {

enum class Side { LHS, RHS };

/// One labelled term of an equality. It enters its side as sign * value, so
/// terms printed on the "= 0" side keep their printed value and carry -1.
template <class Real>
struct Component {
  std::string label;
  Real value{0};
  Side side = Side::LHS;
  int sign = 1;
};

template <class Real>
struct CheckResult {
  EqualityParams<Real> params;
  PrecisionSpec prec;
  Real lhs{0};
  Real rhs{0};
  Real residual{0};
  int matched_digits = 0;
  Real error_budget{0};
  std::vector<Component<Real>> components;
  double runtime_seconds = 0;
  // Integrand samples of the first vertical integral, when requested.
  std::vector<quad::Sample<Real>> samples;

  bool within_budget() const {
    using std::abs;
    return abs(residual) <= error_budget;
  }

  const Component<Real>* find(const std::string& label) const {
    for (const auto& c : components)
      if (c.label == label) return &c;
    return nullptr;
  }
};

struct CheckOptions {
  quad::QuadOptions quad;
};

/// floor(-log10(|residual| / max(|lhs|, |rhs|, 1))), clamped to
/// [0, working].
template <class Real>
int matched_digits(const Real& residual, const Real& lhs, const Real& rhs, int working) {
  using std::abs;
  Real scale = abs(lhs) > abs(rhs) ? abs(lhs) : abs(rhs);
  if (scale < 1) scale = 1;
  if (residual == 0) return working;
  double d = std::floor(-log10_abs(Real(abs(residual) / scale)));
  if (d > working) return working;
  if (d < 0) return 0;
  return static_cast<int>(d);
}

namespace detail {

template <class Real>
class Assembly {
 public:
  Assembly(const EqualityParams<Real>& p, const PrecisionSpec& prec, const CheckOptions& opts)
      : prec_(prec), opts_(opts) {
    res_.params = p;
    res_.prec = prec;
  }

  void add(std::string label, Side side, int sign, const Real& value, const Real& error = Real(0)) {
    res_.components.push_back({std::move(label), value, side, sign});
    budget_ += error;
  }

  // Integral with its error folded into the budget; `scale` multiplies both.
  void add_integral(std::string label, Side side, int sign, const quad::QuadResult<Real>& q,
                    const Real& scale = Real(1)) {
    using std::abs;
    add(std::move(label), side, sign, Real(scale * q.value), Real(abs(scale) * q.total_error()));
    if (opts_.quad.record_samples && res_.samples.empty()) res_.samples = q.samples;
  }

  void add_series(std::string label, Side side, int sign, const SeriesResult<Real>& s,
                  const Real& scale = Real(1)) {
    using std::abs;
    add(std::move(label), side, sign, Real(scale * s.value), Real(abs(scale) * s.tail_bound));
  }

  CheckResult<Real> finish(double seconds) {
    using std::abs;
    CheckResult<Real> r = std::move(res_);
    for (const auto& c : r.components) {
      Real v = c.sign > 0 ? c.value : Real(-c.value);
      (c.side == Side::LHS ? r.lhs : r.rhs) += v;
    }
    r.residual = r.lhs - r.rhs;
    r.error_budget = budget_ + pow10_neg<Real>(prec_.working_digits - 3) * (1 + abs(r.lhs) + abs(r.rhs));
    r.matched_digits = matched_digits(r.residual, r.lhs, r.rhs, prec_.working_digits);
    r.runtime_seconds = seconds;
    return r;
  }

 private:
  PrecisionSpec prec_;
  CheckOptions opts_;
  CheckResult<Real> res_;
  Real budget_{0};
};

template <class Real>
quad::Weight<Real> weight(quad::WeightKind kind, const Frequency<Real>& a) {
  quad::Weight<Real> w;
  w.kind = kind;
  w.a = a;
  return w;
}

// Vertical ln|zeta(b+it)| integral. Zeros on the line are located only up to
// the tolerance cutoff, since nothing beyond it is sampled.
template <class Real>
quad::QuadResult<Real> vertical_log(const Real& b, const quad::Weight<Real>& w, const Real& t_max,
                                    const PrecisionSpec& prec, const CheckOptions& opts) {
  Real cut = quad::effective_cutoff(w, quad::log_abs_zeta_envelope(b, prec), t_max, prec, opts.quad);
  auto spec = quad::log_abs_zeta_vertical(b, w, to_double(cut) + 1, prec);
  return quad::integrate(spec, t_max, prec, opts.quad);
}

template <class Real>
quad::QuadResult<Real> vertical_arg(const Real& b, const quad::Weight<Real>& w, const Real& t_max,
                                    ArgConvention convention, const PrecisionSpec& prec,
                                    const CheckOptions& opts) {
  auto branch = BranchConfig<Real>::for_line(b);
  Real cut = quad::effective_cutoff(w, quad::arg_zeta_envelope(to_double(b)), t_max, prec, opts.quad);
  auto spec = quad::arg_zeta_vertical(branch, w, to_double(cut) + 1, prec, convention);
  return quad::integrate(spec, t_max, prec, opts.quad);
}

// w(x) sum_j ln|zeta(s_j + x)| on the real axis.
template <class Real>
quad::IntegrandSpec<Real> real_axis_spec(const std::vector<Real>& shifts, const quad::Weight<Real>& w,
                                         const PrecisionSpec& prec) {
  if (shifts.size() == 1) return quad::log_abs_zeta_real_axis(shifts[0], w);
  quad::IntegrandSpec<Real> spec;
  spec.kind = quad::IntegrandKind::CUSTOM;
  spec.weight = w;
  spec.real_axis_shifts = shifts;
  for (const Real& s : shifts)
    for (const Real& x : quad::real_axis_singularities(s)) spec.singular_points.push_back(x);
  quad::sort_unique(spec.singular_points);
  spec.custom = [shifts, prec](const Real& x) {
    Real sum(0);
    for (const Real& s : shifts) sum += log_abs_zeta(Real(s + x), Real(0), prec);
    return sum;
  };
  spec.label = "sum ln|zeta(s+x)|";
  return spec;
}

// int_0^X w(x) sum_j ln|zeta(s_j + x)| dx for an oscillatory weight.
template <class Real>
quad::QuadResult<Real> real_axis_log(const std::vector<Real>& shifts, const quad::Weight<Real>& w,
                                     const Real& x_max, const PrecisionSpec& prec,
                                     const CheckOptions& opts) {
  return quad::integrate(real_axis_spec(shifts, w, prec), x_max, prec, opts.quad);
}

template <class Real>
quad::IntegrandSpec<Real> gamma_spec(std::function<Real(const Real&)> g, const quad::Weight<Real>& w) {
  quad::IntegrandSpec<Real> spec;
  spec.kind = quad::IntegrandKind::ARG_GAMMA_VERTICAL;
  spec.weight = w;
  spec.envelope = quad::arg_gamma_envelope();
  spec.custom = std::move(g);
  spec.label = "Gamma arguments";
  return spec;
}

template <class Real>
quad::QuadResult<Real> vertical_gamma(std::function<Real(const Real&)> g, const quad::Weight<Real>& w,
                                      const Real& t_max, const PrecisionSpec& prec,
                                      const CheckOptions& opts) {
  return quad::integrate(gamma_spec(std::move(g), w), t_max, prec, opts.quad);
}

// lim_{t->0+} arg zeta(1 - b - it) for b <= 0: zeta is positive right of 1,
// and at b = 0 the pole gives zeta(1 - it) ~ i/t.
template <class Real>
Real arg_zeta_reflected_start(const Real& b) {
  return b == 0 ? pi<Real>() / 2 : Real(0);
}

// G(t) of the Gamma forms; see assemble_gamma_form.
template <class Real>
std::function<Real(const Real&)> gamma_kernel(const EqualityParams<Real>& p, const PrecisionSpec& prec) {
  const Real b = p.b;
  switch (p.case_id) {
    case CaseId::EQ9: {
      const Real second_start = arg_zeta_reflected_start(b) - BranchConfig<Real>::for_line(b).initial_arg;
      return [b, prec, second_start](const Real& t) {
        Real y = t / 2;
        return arg_gamma<Real>({Real(Real(1) / 2 - b / 2), y}, prec) +
               arg_gamma<Real>({Real(b / 2), y}, prec, second_start);
      };
    }
    case CaseId::EQ9A:
    case CaseId::EQ9B: {
      // b = -1/2: Gamma(3/4 + it/2) = (-1/4 + it/2) Gamma(-1/4 + it/2). The
      // second Gamma starts at pi on the branch of arg zeta.
      const Real quarter = Real(1) / 4;
      const GammaArgReading reading = p.gamma_reading;
      return [prec, quarter, reading](const Real& t) {
        Real y = t / 2;
        Real first = 2 * arg_gamma<Real>({Real(3 * quarter), y}, prec);
        if (reading == GammaArgReading::GAMMA)
          return first - arg_gamma<Real>({Real(-quarter), y}, prec, pi<Real>());
        // arg(-1/4 + it/2) continued from -pi at t = 0+.
        using std::atan2;
        return first - (atan2(y, Real(-quarter)) - 2 * pi<Real>());
      };
    }
    case CaseId::EQ9C: {
      // Duplication: arg Gamma(1/2 + it/2) + arg Gamma(it/2) = arg Gamma(it) - t ln 2,
      // with arg Gamma(it) continued from 3pi/2 at t = 0+.
      const Real start = 3 * pi<Real>() / 2;
      return [prec, start](const Real& t) { return arg_gamma<Real>({Real(0), t}, prec, start); };
    }
    default:
      throw Error(ErrorKind::InvalidParams, "no Gamma-form integrand for this case");
  }
}

// (2 pi/a) sum_k e^{-a t_k} over the nontrivial zeros: the gap between the
// LITTLEWOOD and CONTINUOUS arg integrals against e^{-at} left of the line.
// Beyond T there are at most ln(t+1) + 10 ordinates in [t, t+1] (main term
// plus twice the Backlund remainder), which bounds the tail geometrically.
template <class Real>
SeriesResult<Real> zero_jump_sum(const Frequency<Real>& a, const PrecisionSpec& prec,
                                 const CheckOptions& opts) {
  using std::exp;
  using std::log;
  const Real av = a.value();
  const Real r = exp(-av);
  const Real tol = quad::detail::tolerance<Real>(prec, opts.quad) / 10;
  auto tail = [&](const Real& t) {
    return 2 * pi<Real>() / av * exp(-av * t) *
           ((log(t + 1) + 10) / (1 - r) + r / ((t + 1) * (1 - r) * (1 - r)));
  };
  long T = 15;
  while (tail(Real(T)) > tol) ++T;
  auto zeros = strip_zero_ordinates<Real>(static_cast<double>(T) + 0.5, prec);
  detail::CompensatedSum<Real> acc;
  for (const Real& t : zeros) acc.add(exp(-av * t));
  return {Real(2 * pi<Real>() / av * acc.value()), static_cast<int>(zeros.size()),
          tail(Real(T) + Real(0.5))};
}

// Functional-equation rewriting of the arg integral along Re s = b <= 0:
//   ln pi/a^2 - int e^{-at} G(t) dt + int cos(ax)(ln|zeta(b+x)| + ln|zeta(1-b+x)|) dx
//   + (pi/a)(1 - cos a(1-b)) - (pi/a) sum_k (1 - cos a(-2k-b)) = 0,
// G(t) = arg Gamma(1/2 - b/2 + it/2) + arg Gamma(b/2 + it/2), the second on the
// branch continuous with arg zeta(b + it).
template <class Real>
void assemble_gamma_form(Assembly<Real>& out, const EqualityParams<Real>& p, const Real& log_const,
                         const std::string& const_label, bool with_pole_terms,
                         const PrecisionSpec& prec, const CheckOptions& opts) {
  using quad::WeightKind;
  const Real av = p.a.value();
  out.add(const_label, Side::LHS, 1, Real(log_const / (av * av)));
  out.add_integral("lhs.gamma_integral", Side::LHS, -1,
                   vertical_gamma<Real>(gamma_kernel(p, prec), weight(WeightKind::EXP_DECAY, p.a),
                                        p.t_max, prec, opts));
  out.add_integral("rhs.real_axis_integral", Side::RHS, -1,
                   real_axis_log<Real>({p.b, Real(1 - p.b)}, weight(WeightKind::COS, p.a), p.x_max,
                                       prec, opts));
  if (p.arg_convention == ArgConvention::LITTLEWOOD)
    out.add_series("lhs.zero_jumps", Side::LHS, 1, zero_jump_sum(p.a, prec, opts));
  if (with_pole_terms) {
    out.add("rhs.pole", Side::RHS, -1, pole_contribution(p.a, p.b, PoleFamily::EXP_IMAG));
    out.add("rhs.trivial_zeros", Side::RHS, -1, trivial_zero_contribution(p.a, p.b));
  }
}

}  // namespace detail

/// Evaluates both sides of one equality.
///
/// Components are stored as the printed terms; lhs and rhs are their signed
/// sums. error_budget adds the certified quadrature and series bounds and a
/// rounding allowance of 10^{-(working-3)} (1 + |lhs| + |rhs|).
template <class Real>
CheckResult<Real> check(const EqualityParams<Real>& p, const PrecisionSpec& prec,
                        const CheckOptions& opts = {}) {
  using quad::WeightKind;
  using std::log;
  prec.validate();
  p.validate(prec);
  const auto start = std::chrono::steady_clock::now();
  detail::Assembly<Real> out(p, prec, opts);
  const Real& b = p.b;
  const Frequency<Real>& a = p.a;
  const Real av = a.value();
  const Real pi_ = pi<Real>();

  switch (p.case_id) {
    case CaseId::EQ2:
      out.add_integral("lhs.integral", Side::LHS, 1,
                       detail::vertical_log(b, detail::weight(WeightKind::SECH, a), p.t_max, prec, opts),
                       Real(1 / pi_));
      out.add_series("rhs.alternating_sum", Side::RHS, 1,
                     alternating_log_zeta_sum(b, a, p.n_max, prec), Real(1 / av));
      break;
    case CaseId::EQ3:
      out.add_integral("lhs.integral", Side::LHS, 1,
                       detail::vertical_log(b, detail::weight(WeightKind::SECH, a), p.t_max, prec, opts),
                       a.over_pi());
      out.add("rhs.pole", Side::RHS, 1, pole_contribution(a, b, PoleFamily::COSH));
      out.add_series("rhs.alternating_sum", Side::RHS, 1, alternating_log_zeta_sum(b, a, p.n_max, prec));
      break;
    case CaseId::EQ4:
      out.add_integral("lhs.integral", Side::LHS, 1,
                       detail::vertical_log(b, detail::weight(WeightKind::SECH, a), p.t_max, prec, opts));
      out.add("rhs.log_pi_over_2", Side::RHS, 1, Real(log(pi_ / 2)));
      out.add_series("rhs.alternating_sum", Side::RHS, 1, alternating_log_zeta_integers<Real>(p.n_max, prec));
      break;
    case CaseId::T1A:
      out.add_integral("lhs.integral", Side::LHS, 1,
                       detail::vertical_arg(b, detail::weight(WeightKind::SECH_SQ_TIMES_T, a), p.t_max,
                                            p.arg_convention, prec, opts));
      out.add("rhs.pole", Side::RHS, 1, pole_contribution(a, b, PoleFamily::COSH_SQ));
      out.add_series("rhs.logderiv_sum", Side::RHS, 1, log_zeta_logderiv_sum(b, a, p.n_max, prec),
                     Real(pi_ / (av * av)));
      break;
    case CaseId::T1A_LIMIT: {
      out.add_integral("lhs.integral", Side::LHS, 1,
                       detail::vertical_arg(b, detail::weight(WeightKind::SECH_SQ_TIMES_T, a), p.t_max,
                                            p.arg_convention, prec, opts));
      out.add("rhs.constant", Side::RHS, 1, Real((log(pi_) + euler_gamma<Real>() / 2 - 1) / pi_));
      out.add_series("rhs.g_sum", Side::RHS, 1, theorem1a_g_sum<Real>(p.n_max, prec));
      break;
    }
    case CaseId::EQ6:
    case CaseId::EQ6A:
    case CaseId::EQ10:
    case CaseId::EQ10_UNCONDITIONAL:
      out.add_integral("lhs.integral", Side::LHS, 1,
                       detail::vertical_log(b, detail::weight(WeightKind::EXP_DECAY, a), p.t_max, prec,
                                            opts));
      out.add_integral("rhs.real_axis_integral", Side::RHS, -1,
                       detail::real_axis_log<Real>({b}, detail::weight(WeightKind::SIN, a), p.x_max, prec,
                                                   opts),
                       Real(-1));
      out.add("rhs.pole", Side::RHS, -1, pole_contribution(a, b, PoleFamily::EXP_REAL));
      break;
    case CaseId::EQ7:
    case CaseId::EQ7A:
    case CaseId::EQ8:
      out.add_integral("lhs.integral", Side::LHS, 1,
                       detail::vertical_arg(b, detail::weight(WeightKind::EXP_DECAY, a), p.t_max,
                                            p.arg_convention, prec, opts));
      out.add_integral("rhs.real_axis_integral", Side::RHS, -1,
                       detail::real_axis_log<Real>({b}, detail::weight(WeightKind::COS, a), p.x_max, prec,
                                                   opts));
      out.add("rhs.pole", Side::RHS, -1, pole_contribution(a, b, PoleFamily::EXP_IMAG));
      if (p.case_id == CaseId::EQ8)
        out.add("rhs.trivial_zeros", Side::RHS, -1, trivial_zero_contribution(a, b));
      break;
    case CaseId::EQ9:
    case CaseId::EQ9A:
    case CaseId::EQ9B:
      detail::assemble_gamma_form(out, p, Real(log(pi_)), "lhs.log_pi_over_a2", true, prec, opts);
      break;
    case CaseId::EQ9C:
      detail::assemble_gamma_form(out, p, Real(log(2 * pi_)), "lhs.log_2pi_over_a2", false, prec, opts);
      break;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out.finish(secs);
}

/// Integrand of one of the case's integrals, for sampling: the vertical one
/// (the Gamma combination for the Gamma forms) or the real-axis one.
template <class Real>
quad::IntegrandSpec<Real> case_integrand(const EqualityParams<Real>& p, bool real_axis, double t_hi,
                                         const PrecisionSpec& prec) {
  using quad::WeightKind;
  p.validate(prec);
  const CaseId c = p.case_id;
  const bool gamma_form = c == CaseId::EQ9 || c == CaseId::EQ9A || c == CaseId::EQ9B || c == CaseId::EQ9C;
  const bool sin_family = c == CaseId::EQ6 || c == CaseId::EQ6A || c == CaseId::EQ10 ||
                          c == CaseId::EQ10_UNCONDITIONAL;
  const bool cos_family = c == CaseId::EQ7 || c == CaseId::EQ7A || c == CaseId::EQ8;
  if (real_axis) {
    if (sin_family) return detail::real_axis_spec<Real>({p.b}, detail::weight(WeightKind::SIN, p.a), prec);
    if (cos_family) return detail::real_axis_spec<Real>({p.b}, detail::weight(WeightKind::COS, p.a), prec);
    if (gamma_form)
      return detail::real_axis_spec<Real>({p.b, Real(1 - p.b)}, detail::weight(WeightKind::COS, p.a), prec);
    throw Error(ErrorKind::InvalidParams, std::string(to_string(c)) + " has no real-axis integral");
  }
  if (gamma_form)
    return detail::gamma_spec(detail::gamma_kernel(p, prec), detail::weight(WeightKind::EXP_DECAY, p.a));
  switch (c) {
    case CaseId::EQ2:
    case CaseId::EQ3:
    case CaseId::EQ4:
      return quad::log_abs_zeta_vertical(p.b, detail::weight(WeightKind::SECH, p.a), t_hi, prec);
    case CaseId::T1A:
    case CaseId::T1A_LIMIT:
      return quad::arg_zeta_vertical(BranchConfig<Real>::for_line(p.b),
                                     detail::weight(WeightKind::SECH_SQ_TIMES_T, p.a), t_hi, prec,
                                     p.arg_convention);
    default:
      break;
  }
  if (sin_family)
    return quad::log_abs_zeta_vertical(p.b, detail::weight(WeightKind::EXP_DECAY, p.a), t_hi, prec);
  return quad::arg_zeta_vertical(BranchConfig<Real>::for_line(p.b), detail::weight(WeightKind::EXP_DECAY, p.a),
                                 t_hi, prec, p.arg_convention);
}

/// The a -> pi limit of the arg equality on the critical line.
template <class Real>
CheckResult<Real> check_t1a_limit(const PrecisionSpec& prec, int n_max, const Real& t_max,
                                  const CheckOptions& opts = {}) {
  auto p = EqualityParams<Real>::defaults(CaseId::T1A_LIMIT, prec);
  p.n_max = n_max;
  p.t_max = t_max;
  return check(p, prec, opts);
}

}  // namespace rhv
