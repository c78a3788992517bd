#pragma once

#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <mutex>
#include <vector>

#include "rhv/bernoulli.hpp"
#include "rhv/complex.hpp"
#include "rhv/gamma.hpp"

namespace rhv {

namespace detail {

/// Cutoff N and number of Bernoulli correction terms M for Euler-Maclaurin.
struct EulerMaclaurinPlan {
  int n = 0;
  int m = 0;
  double log10_remainder = 0;  // log10 of the remainder bound
};

// Picks the cheapest (N, M) whose remainder bound
//   |R_M| <= |s + 2M + 1| / (sigma + 2M + 1) * |T_{M+1}|,
//   |T_k| = |B_2k|/(2k)! |s (s+1) ... (s+2k-2)| N^{-sigma-2k+1},
// is below 10^-digits. Magnitudes are estimated in double log space with
// |B_2k|/(2k)! <= 2 zeta(2)/(2 pi)^2k. The moduli |s + j| are taken at
// sigma_hi >= sigma so one plan covers a cell of abscissae.
inline EulerMaclaurinPlan plan_euler_maclaurin(double sigma, double t, int digits,
                                               double sigma_hi = -1e300) {
  if (sigma_hi < sigma) sigma_hi = sigma;
  auto modulus = [&](double j) {
    return std::max(std::hypot(sigma + j, t), std::hypot(sigma_hi + j, t));
  };
  const double target = -digits * std::log(10.0);
  const double log_coef0 = std::log(2.0 * 1.6449340668482264);
  const double log_2pi = std::log(2.0 * M_PI);
  const int max_m = kBernoulliTableLimit / 2 - 2;

  EulerMaclaurinPlan best{0, 0, 0};
  double best_cost = std::numeric_limits<double>::infinity();
  const double abs_s = modulus(0);
  const int n_cap = static_cast<int>(10.0 * (abs_s + digits)) + 100;

  int n = 2;
  int misses_after_hit = 0;
  while (n <= n_cap) {
    const double log_n = std::log(static_cast<double>(n));
    // log |s (s+1) ... (s+2k-2)| accumulated incrementally.
    double log_poch = std::log(std::max(abs_s, 1e-300));
    int found_m = -1;
    double found_log = 0;
    for (int k = 1; k <= max_m; ++k) {
      // T_{k+1} needs factors (s+2k-1)(s+2k).
      double log_poch_next = log_poch + std::log(modulus(2 * k - 1)) + std::log(modulus(2 * k));
      double log_t_next = log_coef0 - 2 * (k + 1) * log_2pi + log_poch_next -
                          (sigma + 2 * (k + 1) - 1) * log_n;
      double denom = sigma + 2 * k + 1;
      if (denom > 0) {
        double log_r = log_t_next + std::log(modulus(2 * k + 1) / denom);
        if (log_r < target) {
          found_m = k;
          found_log = log_r;
          break;
        }
      }
      log_poch = log_poch_next;
      // Terms have started to grow for good: this N cannot reach the target.
      if (2 * k > 2 * (abs_s + n) * M_PI + 50) break;
    }
    if (found_m > 0) {
      double cost = n + 3.0 * found_m;
      if (cost < best_cost) {
        best_cost = cost;
        best = {n, found_m, found_log / std::log(10.0)};
        misses_after_hit = 0;
      } else if (++misses_after_hit > 8) {
        break;
      }
    }
    n += std::max(1, n / 10);
  }
  if (best.n == 0)
    throw Error(ErrorKind::PrecisionUnreachable,
                "Euler-Maclaurin plan: no cutoff reaches the requested accuracy");
  return best;
}

// Plans are cached on a grid of quarter units: |t| is rounded up, the
// exponent uses the lower sigma edge and the moduli the upper one, and one
// digit is added.
inline EulerMaclaurinPlan cached_plan_euler_maclaurin(double sigma, double t, int digits) {
  struct Key {
    long sigma_q, t_q;
    int digits;
    bool operator<(const Key& o) const {
      return std::tie(sigma_q, t_q, digits) < std::tie(o.sigma_q, o.t_q, o.digits);
    }
  };
  static std::mutex mu;
  static std::map<Key, EulerMaclaurinPlan> cache;
  Key key{static_cast<long>(std::floor(sigma * 4)), static_cast<long>(std::ceil(std::abs(t) * 4)),
          digits};
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  EulerMaclaurinPlan plan =
      plan_euler_maclaurin(key.sigma_q / 4.0, key.t_q / 4.0, digits + 1, (key.sigma_q + 1) / 4.0);
  std::lock_guard lock(mu);
  cache.emplace(key, plan);
  return plan;
}

// ln(n) for n in [0, size); entry 0 and 1 are zero. Grown under a mutex and
// copied out, so callers never observe a reallocation.
template <class Real>
class LogTable {
 public:
  static LogTable& instance() {
    static LogTable t;
    return t;
  }

  void copy_prefix(int size, std::vector<Real>& out) {
    std::lock_guard lock(mu_);
    grow(size);
    out.assign(logs_.begin(), logs_.begin() + size);
  }

 private:
  void grow(int size) {
    using std::log;
    if (size <= static_cast<int>(logs_.size())) return;
    int old = static_cast<int>(logs_.size());
    int cap = std::max(size, 2 * old);
    logs_.resize(cap);
    std::vector<int> spf = smallest_prime_factors(cap);
    for (int n = std::max(old, 0); n < cap; ++n) {
      if (n < 2) {
        logs_[n] = Real(0);
      } else if (spf[n] == n) {
        logs_[n] = log(Real(n));
      } else {
        logs_[n] = logs_[spf[n]] + logs_[n / spf[n]];
      }
    }
  }

  static std::vector<int> smallest_prime_factors(int size) {
    std::vector<int> spf(size, 0);
    for (int i = 2; i < size; ++i) {
      if (spf[i] != 0) continue;
      for (long long j = i; j < size; j += i)
        if (spf[j] == 0) spf[j] = i;
    }
    return spf;
  }

  std::mutex mu_;
  std::vector<Real> logs_;
};

inline std::vector<int> smallest_prime_factor_table(int size) {
  std::vector<int> spf(std::max(size, 2), 0);
  for (int i = 2; i < size; ++i) {
    if (spf[i] != 0) continue;
    for (long long j = i; j < size; j += i)
      if (spf[j] == 0) spf[j] = i;
  }
  return spf;
}

template <class Real>
struct ZetaEvaluation {
  ComplexPoint<Real> value;
  ComplexPoint<Real> derivative;  // only filled when requested
  Real error_bound{0};
};

// Euler-Maclaurin summation of zeta(s), valid for sigma > -2M-1 and s != 1.
// n^{-s} is completely multiplicative, so only primes need exp/sin/cos.
template <class Real>
ZetaEvaluation<Real> zeta_euler_maclaurin(const ComplexPoint<Real>& s,
                                          const PrecisionSpec& prec, bool with_derivative) {
  using C = ComplexPoint<Real>;
  using std::exp;
  using std::log;

  if (s.re == 1 && s.im == 0) throw Error(ErrorKind::PoleAtOne, "zeta(1)");

  const int digits = prec.working_digits + 3;
  EulerMaclaurinPlan plan =
      cached_plan_euler_maclaurin(to_double(s.re), to_double(s.im), digits);
  const int n_cut = plan.n;

  std::vector<Real> logs;
  LogTable<Real>::instance().copy_prefix(n_cut + 1, logs);
  std::vector<int> spf = smallest_prime_factor_table(n_cut + 1);

  // powers[n] = n^{-s}
  std::vector<C> powers(n_cut + 1);
  powers[1] = C(Real(1), Real(0));
  for (int n = 2; n <= n_cut; ++n) {
    if (spf[n] == n) {
      Real mag = exp(-s.re * logs[n]);
      Real sn, cn;
      sincos(Real(s.im * logs[n]), sn, cn);
      powers[n] = C(mag * cn, -mag * sn);
    } else {
      powers[n] = powers[spf[n]] * powers[n / spf[n]];
    }
  }

  C sum(Real(0), Real(0));
  C dsum(Real(0), Real(0));
  for (int n = 1; n < n_cut; ++n) {
    sum += powers[n];
    if (with_derivative && n > 1) dsum -= powers[n] * logs[n];
  }

  const C& n_pow = powers[n_cut];  // N^{-s}
  const Real big_n(n_cut);
  const Real& log_n = logs[n_cut];
  const C one(Real(1), Real(0));
  C s_minus_1 = s - one;

  // N^{1-s}/(s-1) + N^{-s}/2
  C head = n_pow * big_n / s_minus_1;
  sum += head;
  sum += n_pow / Real(2);
  if (with_derivative) {
    C inv = one / s_minus_1;
    dsum += head * (C(-log_n) - inv);
    dsum -= n_pow * log_n / Real(2);
  }

  std::vector<Real> coef, unused;
  BernoulliRealTables<Real>::instance().ensure(plan.m, coef, unused);

  // T_k = (s)_{2k-1} N^{-s-2k+1}; T_1 = s N^{-s-1}.
  const Real inv_n2 = Real(1) / (big_n * big_n);
  C poch_term = s * n_pow / big_n;
  C harmonic = one / s;  // sum_{j=0}^{2k-2} 1/(s+j)
  for (int k = 1; k <= plan.m; ++k) {
    C term = poch_term * coef[k];
    sum += term;
    if (with_derivative) dsum += term * (harmonic - C(log_n));
    if (k == plan.m) break;
    C a = s + C(Real(2 * k - 1));
    C b = s + C(Real(2 * k));
    poch_term *= a * b;
    poch_term *= inv_n2;
    if (with_derivative) harmonic += one / a + one / b;
  }

  ZetaEvaluation<Real> out;
  out.value = sum;
  out.derivative = dsum;
  using std::pow;
  out.error_bound = pow(Real(10), Real(plan.log10_remainder));
  return out;
}

// 2^s pi^{s-1} sin(pi s/2) Gamma(1-s): the factor carrying zeta(1-s) to zeta(s).
template <class Real>
ComplexPoint<Real> reflection_factor(const ComplexPoint<Real>& s, const PrecisionSpec& prec) {
  using C = ComplexPoint<Real>;
  using std::cosh;
  using std::log;
  using std::sinh;
  const C one(Real(1), Real(0));
  C log_mag = s * log(Real(2)) + (s - one) * log(pi<Real>()) + log_gamma(one - s, prec);
  Real half_pi_t = pi<Real>() * s.im / 2;
  C sine(boost::math::sin_pi(s.re / 2) * cosh(half_pi_t),
         boost::math::cos_pi(s.re / 2) * sinh(half_pi_t));
  return exp(log_mag) * sine;
}

}  // namespace detail

/// Riemann zeta at s != 1. Euler-Maclaurin for Re s >= 0; the reflection
/// zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s) for Re s < 0.
template <class Real>
ComplexPoint<Real> zeta(const ComplexPoint<Real>& s, const PrecisionSpec& prec) {
  if (s.re < 0) {
    ComplexPoint<Real> one(Real(1), Real(0));
    auto inner = detail::zeta_euler_maclaurin(one - s, prec, false).value;
    return detail::reflection_factor(s, prec) * inner;
  }
  return detail::zeta_euler_maclaurin(s, prec, false).value;
}

/// Real-argument convenience overload.
template <class Real>
Real zeta(const Real& x, const PrecisionSpec& prec) {
  return zeta(ComplexPoint<Real>(x, Real(0)), prec).re;
}

/// pi^{s-1/2} Gamma(1/2 - s/2) / Gamma(s/2) zeta(1-s), with zeta(1-s) summed
/// directly (no reflection), so it is an independent route to zeta(s).
template <class Real>
ComplexPoint<Real> functional_equation_rhs(const ComplexPoint<Real>& s, const PrecisionSpec& prec) {
  using C = ComplexPoint<Real>;
  using std::log;
  const C one(Real(1), Real(0));
  const C half(Real(1) / 2, Real(0));
  C a = half - s / Real(2);
  C b = s / Real(2);
  if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b))
    throw Error(ErrorKind::GammaPole, "functional_equation_rhs: Gamma factor pole");
  C log_factor = (s - half) * log(pi<Real>()) + log_gamma(a, prec) - log_gamma(b, prec);
  return exp(log_factor) * detail::zeta_euler_maclaurin(one - s, prec, false).value;
}

/// ln |zeta(b + i t)|.
template <class Real>
Real log_abs_zeta(const Real& b, const Real& t, const PrecisionSpec& prec) {
  using std::log;
  ComplexPoint<Real> z = zeta(ComplexPoint<Real>(b, t), prec);
  Real mag = abs(z);
  if (mag == 0 || mag < pow10_neg<Real>(prec.working_digits + 5))
    throw Error(ErrorKind::SingularPoint, "log_abs_zeta: zeta vanishes to working precision");
  return log(mag);
}

/// zeta'(s)/zeta(s) by differentiating the Euler-Maclaurin sum term by term.
template <class Real>
ComplexPoint<Real> zeta_log_deriv(const ComplexPoint<Real>& s, const PrecisionSpec& prec) {
  auto ev = detail::zeta_euler_maclaurin(s, prec, true);
  if (abs(ev.value) < pow10_neg<Real>(prec.working_digits))
    throw Error(ErrorKind::ZeroDenominator, "zeta_log_deriv: zeta(s) vanishes");
  return ev.derivative / ev.value;
}

template <class Real>
Real zeta_log_deriv(const Real& x, const PrecisionSpec& prec) {
  return zeta_log_deriv(ComplexPoint<Real>(x, Real(0)), prec).re;
}

/// zeta'(s) alone.
template <class Real>
ComplexPoint<Real> zeta_derivative(const ComplexPoint<Real>& s, const PrecisionSpec& prec) {
  return detail::zeta_euler_maclaurin(s, prec, true).derivative;
}

}  // namespace rhv
