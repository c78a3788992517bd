#pragma once

#include <cmath>

#include "rhv/quadrature/integrand.hpp"

namespace rhv::quad {

namespace detail {

// int_T^oo (1+t)^q e^{-alpha t} dt for integer q >= 0.
template <class Real>
Real power_exp_tail(int q, const Real& alpha, const Real& t) {
  using std::exp;
  Real sum(0);
  Real falling(1);  // q!/(q-j)!
  Real u = 1 + t;
  for (int j = 0; j <= q; ++j) {
    using std::pow;
    sum += falling * pow(u, q - j) / pow(alpha, j + 1);
    falling *= (q - j);
  }
  return exp(-alpha * t) * sum;
}

}  // namespace detail

/// Certified bound on |int_T^oo w(t) f(t) dt| from the envelope of f.
///
/// With ln(2+t) <= ln(2+T) + (t-T)/(2+T) and t - T <= 1 + t the envelope is
/// at most (A + B(1+t))(1+t)^p; the weights are bounded by e^{-at},
/// sech(at) <= 2e^{-at} and t sech^2(at) <= 4(1+t)e^{-2at}, so everything
/// reduces to closed-form integrals of (1+t)^q e^{-alpha t}.
template <class Real>
Real tail_bound_at(const IntegrandSpec<Real>& spec, const Real& t) {
  using std::log;
  if (!spec.weight.decaying())
    throw Error(ErrorKind::UnboundedTail, "tail_bound: oscillatory weight has no decaying envelope");
  const Envelope& e = spec.envelope;
  Real a_coef = Real(e.c1) + Real(e.c2) * log(2 + t);
  Real b_coef = Real(e.c2) / (2 + t);
  Real scale(1);
  Real alpha = spec.weight.a.value();
  int extra = 0;
  switch (spec.weight.kind) {
    case WeightKind::EXP_DECAY:
      break;
    case WeightKind::SECH:
      scale = 2;
      break;
    case WeightKind::SECH_SQ_TIMES_T:
      scale = 4;
      alpha *= 2;
      extra = 1;
      break;
    default:
      break;
  }
  int q = e.p + extra;
  return scale * (a_coef * detail::power_exp_tail(q, alpha, t) +
                  b_coef * detail::power_exp_tail(q + 1, alpha, t));
}

/// Public form: requires a decaying weight and T_max >= 10.
template <class Real>
Real tail_bound(const IntegrandSpec<Real>& spec, const Real& t_max, const PrecisionSpec&) {
  if (t_max < 10) throw Error(ErrorKind::InvalidParams, "tail_bound: T_max must be at least 10");
  return tail_bound_at(spec, t_max);
}

/// Bound on |int_X^oo w(x) sum_j ln|zeta(s_j + x)| dx| for |w| <= 1, from
/// 0 < ln zeta(y) <= 2 * 2^{-y}, valid for y >= 3.
template <class Real>
Real real_axis_tail_bound(const IntegrandSpec<Real>& spec, const Real& x) {
  using std::pow;
  if (spec.real_axis_shifts.empty())
    throw Error(ErrorKind::UnboundedTail, "real-axis tail: integrand has no zeta shifts");
  Real total(0);
  for (const Real& s : spec.real_axis_shifts) {
    if (s + x < 3)
      throw Error(ErrorKind::UnboundedTail, "real-axis tail: cutoff too small for the 2^-x envelope");
    total += 2 * pow(Real(2), -(s + x)) / ln2<Real>();
  }
  return total;
}

}  // namespace rhv::quad
