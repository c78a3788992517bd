#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rhv/branch.hpp"
#include "rhv/gamma.hpp"
#include "rhv/zeta.hpp"

namespace rhv {

/// Riemann-Siegel theta: arg Gamma(1/4 + it/2) - (t/2) ln pi, continuous in t.
template <class Real>
Real hardy_theta(const Real& t, const PrecisionSpec& prec) {
  using std::log;
  ComplexPoint<Real> z(Real(1) / 4, t / 2);
  return log_gamma(z, prec).im - t / 2 * log(pi<Real>());
}

/// Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + it), real for real t.
template <class Real>
Real hardy_z(const Real& t, const PrecisionSpec& prec) {
  Real th = hardy_theta(t, prec);
  Real s, c;
  sincos(th, s, c);
  ComplexPoint<Real> z = zeta(ComplexPoint<Real>(Real(1) / 2, t), prec);
  return c * z.re - s * z.im;
}

/// Refines a sign change of Z in [lo, hi] with the Illinois variant of
/// regula falsi, to an interval of width 10^-working * max(1, t).
template <class Real>
Real refine_hardy_zero(Real lo, Real hi, const PrecisionSpec& prec) {
  using std::abs;
  Real f_lo = hardy_z(lo, prec);
  Real f_hi = hardy_z(hi, prec);
  if (f_lo == 0) return lo;
  if (f_hi == 0) return hi;
  if ((f_lo < 0) == (f_hi < 0))
    throw Error(ErrorKind::DomainError, "refine_hardy_zero: no sign change in bracket");
  const Real width_tol = pow10_neg<Real>(prec.working_digits) * (hi > 1 ? hi : Real(1));
  int side = 0;
  for (int it = 0; it < 400; ++it) {
    Real mid = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    // Bisect when regula falsi lands on or outside the bracket.
    if (!(mid > lo && mid < hi)) mid = (lo + hi) / 2;
    Real f_mid = hardy_z(mid, prec);
    if (f_mid == 0) return mid;
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
      if (side == -1) f_hi /= 2;
      side = -1;
    } else {
      hi = mid;
      f_hi = f_mid;
      if (side == 1) f_lo /= 2;
      side = 1;
    }
    if (hi - lo < width_tol) return (lo + hi) / 2;
  }
  throw Error(ErrorKind::NonConvergent, "refine_hardy_zero: iteration limit");
}

struct ZeroScanOptions {
  double step = 0.02;  // sign-change scan step (double precision)
};

/// Ordinates of the zeros of zeta(1/2 + it) in (t_lo, t_hi), found as sign
/// changes of Z on a double-precision grid and refined at working precision.
/// Pairs of zeros closer than the scan step are not resolved.
template <class Real>
std::vector<Real> critical_line_zeros(double t_lo, double t_hi, const PrecisionSpec& prec,
                                      ZeroScanOptions opts = {}) {
  using std::abs;
  std::vector<Real> zeros;
  if (!(t_hi > t_lo)) return zeros;
  const PrecisionSpec scan_prec = PrecisionSpec::make(16, 1, prec.max_refinement_levels);
  const double lo = std::max(t_lo, 1.0);  // no zeros below t = 14
  const int n = static_cast<int>(std::ceil((t_hi - lo) / opts.step));
  if (n <= 0) return zeros;
  const double h = (t_hi - lo) / n;

  double prev_t = lo;
  double prev_z = hardy_z(prev_t, scan_prec);
  for (int i = 1; i <= n; ++i) {
    double cur_t = lo + i * h;
    double cur_z = hardy_z(cur_t, scan_prec);
    if ((prev_z < 0) != (cur_z < 0)) {
      zeros.push_back(refine_hardy_zero(Real(prev_t), Real(cur_t), prec));
    }
    prev_t = cur_t;
    prev_z = cur_z;
  }
  return zeros;
}

/// Riemann-von Mangoldt count N(T) = theta(T)/pi + 1 + S(T) of the zeros with
/// 0 < Im rho < T, where pi S(T) is the tracked argument on the critical line.
/// T must not be a zero ordinate.
template <class Real>
long zero_count(const Real& t, const PrecisionSpec& prec) {
  using std::abs;
  using std::round;
  ArgTracker<Real> tracker(BranchConfig<Real>::for_line(Real(1) / 2), prec);
  tracker.build(t);
  Real n = hardy_theta(t, prec) / pi<Real>() + 1 + tracker.value(t) / pi<Real>();
  Real r = round(n);
  if (abs(n - r) > Real(1e-6))
    throw Error(ErrorKind::NonConvergent, "zero_count: count is not an integer at t = " +
                                              to_decimal(t, 20));
  return static_cast<long>(to_double(r));
}

/// Ordinates of all nontrivial zeros with 0 < Im rho < t_hi. The critical-line
/// scan is checked against zero_count(t_hi); a shortfall (zeros off the line,
/// or a close pair the scan missed) is a NonConvergent error.
template <class Real>
std::vector<Real> strip_zero_ordinates(double t_hi, const PrecisionSpec& prec) {
  std::vector<Real> zeros = critical_line_zeros<Real>(0, t_hi, prec);
  long expected = zero_count(Real(t_hi), prec);
  if (static_cast<long>(zeros.size()) != expected)
    throw Error(ErrorKind::NonConvergent,
                "strip zeros: scan found " + std::to_string(zeros.size()) + " zeros below t = " +
                    std::to_string(t_hi) + ", the counting function gives " +
                    std::to_string(expected));
  return zeros;
}

}  // namespace rhv
