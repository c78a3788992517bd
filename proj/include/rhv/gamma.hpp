#pragma once

#include <cmath>
#include <optional>

#include "rhv/bernoulli.hpp"
#include "rhv/complex.hpp"

namespace rhv {

namespace detail {

template <class Real>
bool is_nonpositive_integer(const ComplexPoint<Real>& z) {
  using std::floor;
  return z.im == 0 && z.re <= 0 && floor(z.re) == z.re;
}

// Shift and series length for Stirling at `digits` accuracy.
struct StirlingPlan {
  double shift_radius;
};

inline StirlingPlan stirling_plan(int digits) {
  return {0.4 * digits + 10.0};
}

}  // namespace detail

/// Principal branch of log Gamma(z): analytic off (-inf, 0], real on the
/// positive axis, and on the negative axis equal to the limit from the upper
/// half plane. Im log_gamma(x + it) is therefore continuous in t > 0 for any x.
///
/// Uses the recursion Gamma(z + 1) = z Gamma(z) to push Re z into the region
/// where the Stirling series converges to working precision.
template <class Real>
ComplexPoint<Real> log_gamma(const ComplexPoint<Real>& z, const PrecisionSpec& prec) {
  using std::ceil;
  using std::log;
  using C = ComplexPoint<Real>;

  if (detail::is_nonpositive_integer(z))
    throw Error(ErrorKind::GammaPole, "log_gamma at a nonpositive integer");

  const int digits = prec.working_digits + 3;
  const double radius = detail::stirling_plan(digits).shift_radius;
  const double re = to_double(z.re);
  const double im = to_double(z.im);

  int shift = 0;
  if (std::hypot(re, im) < radius || re < 1.0) {
    double need = std::max(radius - re, 1.0 - re);
    if (std::abs(im) >= radius) need = 1.0 - re;
    shift = std::max(0, static_cast<int>(std::ceil(need)));
  }

  C w = z;
  C product(Real(1), Real(0));
  double arg_sum = 0.0;
  for (int j = 0; j < shift; ++j) {
    product *= w;
    double wr = to_double(w.re);
    // Upper-half-plane limit on the negative axis.
    arg_sum += (w.im == 0) ? (wr < 0 ? M_PI : 0.0) : std::atan2(to_double(w.im), wr);
    w.re += 1;
  }

  // Stirling series at w.
  C log_w = log(w);
  C result = (w - C(Real(1) / 2)) * log_w - w;
  result.re += log(2 * pi<Real>()) / 2;

  C inv_w = C(Real(1)) / w;
  C inv_w2 = inv_w * inv_w;
  C power = inv_w;
  const Real tol = pow10_neg<Real>(digits);
  const Real wabs = abs(w);
  for (int k = 1;; ++k) {
    Real c = detail::BernoulliRealTables<Real>::instance().stirling(k);
    C term = power * c;
    result += term;
    using std::abs;
    if (abs(term.re) + abs(term.im) < tol * (1 + wabs)) break;
    if (2 * k + 2 > kBernoulliTableLimit)
      throw Error(ErrorKind::PrecisionUnreachable, "Stirling series did not converge");
    power *= inv_w2;
  }

  if (shift > 0) {
    // log of the product: magnitude from |P|, argument from the principal
    // value plus the winding count recovered from the double-precision sum.
    Real principal = arg(product);
    double turns = std::round((arg_sum - to_double(principal)) / (2 * M_PI));
    C log_p(log(abs(product)), principal + 2 * pi<Real>() * Real(turns));
    result -= log_p;
  }
  return result;
}

/// Limit of Im log_gamma(x + i delta) as delta -> 0+.
template <class Real>
Real log_gamma_arg_at_axis(const Real& x) {
  using std::ceil;
  using std::floor;
  if (x > 0) return Real(0);
  // j >= 0 with x + j < 0 contributes pi; x + j == 0 contributes pi/2.
  Real count_neg = ceil(-x);
  if (floor(x) == x) return -(pi<Real>() * count_neg + pi<Real>() / 2);
  return -pi<Real>() * count_neg;
}

/// Argument of Gamma(z), continuous along the vertical line through z for
/// Im z > 0.
///
/// Without `initial_arg` this is Im log_gamma(z). With it, the branch is
/// shifted by the multiple of 2pi that brings the t -> 0+ value of the line
/// closest to `initial_arg`.
template <class Real>
Real arg_gamma(const ComplexPoint<Real>& z, const PrecisionSpec& prec,
               const std::optional<Real>& initial_arg = std::nullopt) {
  Real v = log_gamma(z, prec).im;
  if (initial_arg) {
    Real base = log_gamma_arg_at_axis(z.re);
    Real two_pi = 2 * pi<Real>();
    double turns = std::round(to_double((*initial_arg - base) / two_pi));
    v += two_pi * Real(turns);
  }
  return v;
}

/// Gamma(z) = exp(log_gamma(z)).
template <class Real>
ComplexPoint<Real> gamma(const ComplexPoint<Real>& z, const PrecisionSpec& prec) {
  return exp(log_gamma(z, prec));
}

}  // namespace rhv
