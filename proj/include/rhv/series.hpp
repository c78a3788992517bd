#pragma once

#include <cmath>

#include "rhv/bernoulli.hpp"
#include "rhv/frequency.hpp"
#include "rhv/zeta.hpp"

namespace rhv {

template <class Real>
struct SeriesResult {
  Real value{0};  // partial sum through n_terms
  int n_terms = 0;
  Real tail_bound{0};
};

namespace detail {

// Neumaier-compensated running sum.
template <class Real>
class CompensatedSum {
 public:
  void add(const Real& x) {
    using std::abs;
    Real t = sum_ + x;
    if (abs(sum_) >= abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_{0};
  Real comp_{0};
};

// 0 < ln zeta(x) <= 2 * 2^{-x} for x >= 3.
template <class Real>
Real log_zeta_envelope(const Real& x) {
  using std::pow;
  return 2 * pow(Real(2), -x);
}

}  // namespace detail

/// x_n = b + pi/(2a) + pi n/a, the abscissae of the alternating sums.
template <class Real>
Real alternating_abscissa(const Real& b, const Frequency<Real>& a, long n) {
  return b + (Real(1) / 2 + Real(n)) / a.over_pi();
}

/// sum_{n=0}^{n_max} (-1)^n ln zeta(b + pi/(2a) + pi n/a).
///
/// Terms decrease to zero, so the first omitted term bounds the tail; once
/// its abscissa reaches 3 the cheaper 2 * 2^{-x} envelope is used.
template <class Real>
SeriesResult<Real> alternating_log_zeta_sum(const Real& b, const Frequency<Real>& a, int n_max,
                                            const PrecisionSpec& prec) {
  using std::log;
  if (n_max < 10) throw Error(ErrorKind::InvalidParams, "alternating sum: n_max must be at least 10");
  Real x0 = alternating_abscissa(b, a, 0);
  if (!(x0 > 1))
    throw Error(ErrorKind::ArgumentNotDominant,
                "alternating sum: b + pi/(2a) must exceed 1");
  detail::CompensatedSum<Real> acc;
  for (int n = 0; n <= n_max; ++n) {
    Real term = log(zeta(alternating_abscissa(b, a, n), prec));
    acc.add(n % 2 == 0 ? term : Real(-term));
  }
  SeriesResult<Real> r;
  r.value = acc.value();
  r.n_terms = n_max + 1;
  Real next = alternating_abscissa(b, a, n_max + 1);
  r.tail_bound = next >= 3 ? detail::log_zeta_envelope(next) : Real(log(zeta(next, prec)));
  return r;
}

/// sum_{n=2}^{n_max} (-1)^{n+1} ln zeta(n): the series of the a -> pi limit on
/// the critical line.
template <class Real>
SeriesResult<Real> alternating_log_zeta_integers(int n_max, const PrecisionSpec& prec) {
  using std::log;
  if (n_max < 10) throw Error(ErrorKind::InvalidParams, "alternating sum: n_max must be at least 10");
  detail::CompensatedSum<Real> acc;
  for (int n = 2; n <= n_max; ++n) {
    Real term = log(zeta(Real(n), prec));
    acc.add(n % 2 == 1 ? term : Real(-term));
  }
  return {acc.value(), n_max - 1, detail::log_zeta_envelope(Real(n_max + 1))};
}

/// sum_{n=2}^{n_max} ln zeta(n) = ln prod zeta(n); the tail is at most
/// sum_{n > n_max} 2 * 2^{-n} = 2^{-n_max+1}.
template <class Real>
SeriesResult<Real> zagier_product_constant(int n_max, const PrecisionSpec& prec) {
  using std::log;
  using std::pow;
  if (n_max < 20) throw Error(ErrorKind::InvalidParams, "zagier constant: n_max must be at least 20");
  detail::CompensatedSum<Real> acc;
  for (int n = 2; n <= n_max; ++n) acc.add(log(zeta(Real(n), prec)));
  return {acc.value(), n_max - 1, pow(Real(2), Real(-n_max + 1))};
}

/// f(x) = ln zeta(1+x) + (x + 1/2) zeta'(1+x)/zeta(1+x).
template <class Real>
Real g_summand(const Real& x, const PrecisionSpec& prec) {
  using std::log;
  Real s = 1 + x;
  return log(zeta(s, prec)) + (x + Real(1) / 2) * zeta_log_deriv(s, prec);
}

/// (1/pi) sum_{n=1}^{n_max} f(n). For y >= 4, |ln zeta(y)| <= 2 * 2^{-y} and
/// |zeta'/zeta(y)| <= 2 ln2 2^{-y}, so |f(n)| <= 2^{-n}(1 + (n + 1/2) ln 2)
/// and the tail sums in closed form.
template <class Real>
SeriesResult<Real> theorem1a_g_sum(int n_max, const PrecisionSpec& prec) {
  using std::pow;
  if (n_max < 50) throw Error(ErrorKind::InvalidParams, "g sum: n_max must be at least 50");
  detail::CompensatedSum<Real> acc;
  for (int n = 1; n <= n_max; ++n) acc.add(g_summand(Real(n), prec));
  const Real l2 = ln2<Real>();
  const Real p = pow(Real(2), Real(-n_max));  // sum_{n > N} 2^{-n}
  const Real q = Real(n_max + 2) * p;          // sum_{n > N} n 2^{-n}
  Real tail = ((1 + l2 / 2) * p + l2 * q) / pi<Real>();
  return {acc.value() / pi<Real>(), n_max, tail};
}

/// Truncated Euler-Maclaurin estimate of the g sum,
///   (1/pi)(int_1^oo f + f(1)/2 - (B_2/2!) f'(1)),
/// with int_1^oo f = -(3/2) ln zeta(2) since f = d/dx((x + 1/2) ln zeta(1+x)),
/// and f'(1) from a centred difference with step 10^{-working/3}.
template <class Real>
Real euler_maclaurin_g_estimate(const PrecisionSpec& prec) {
  using std::log;
  const Real one(1);
  const Real h = pow10_neg<Real>(prec.working_digits / 3);
  Real f1 = g_summand(one, prec);
  Real df1 = (g_summand(Real(one + h), prec) - g_summand(Real(one - h), prec)) / (2 * h);
  Real b2 = rational_to<Real>(bernoulli(2));
  Real integral = -Real(3) / 2 * log(zeta(Real(2), prec));
  return (integral + f1 / 2 - b2 / 2 * df1) / pi<Real>();
}

/// sum_{n=0}^{n_max} (ln zeta(x_n) + (x_n - b) zeta'(x_n)/zeta(x_n)),
/// x_n = b + pi/(2a) + pi n/a. The tail uses the same envelopes as the g sum
/// and requires x_{n_max+1} >= 4.
template <class Real>
SeriesResult<Real> log_zeta_logderiv_sum(const Real& b, const Frequency<Real>& a, int n_max,
                                         const PrecisionSpec& prec) {
  using std::log;
  using std::pow;
  Real x0 = alternating_abscissa(b, a, 0);
  if (!(x0 > 1))
    throw Error(ErrorKind::ArgumentNotDominant, "log-derivative sum: b + pi/(2a) must exceed 1");
  detail::CompensatedSum<Real> acc;
  for (int n = 0; n <= n_max; ++n) {
    Real x = alternating_abscissa(b, a, n);
    acc.add(log(zeta(x, prec)) + (x - b) * zeta_log_deriv(x, prec));
  }
  Real x_next = alternating_abscissa(b, a, n_max + 1);
  if (x_next < 4)
    throw Error(ErrorKind::NonConvergent, "log-derivative sum: n_max too small for the tail envelope");
  // sum_{j>=0} (c0 + 2 c1 ln2 (u + j d)) 2^{-(x + j d)}, u = x - b, d = pi/a.
  const Real d = Real(1) / a.over_pi();
  const Real r = pow(Real(2), -d);
  const Real head = pow(Real(2), -x_next);
  const Real u = x_next - b;
  const Real l2 = ln2<Real>();
  Real geo = head / (1 - r);
  Real lin = head * (u / (1 - r) + d * r / ((1 - r) * (1 - r)));
  return {acc.value(), n_max + 1, 2 * geo + 2 * l2 * lin};
}

}  // namespace rhv
