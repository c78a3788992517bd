#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <mutex>
#include <vector>

#include "rhv/precision.hpp"

namespace rhv {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Largest even index served by bernoulli().
inline constexpr int kBernoulliTableLimit = 2000;

namespace detail {

// Exact B_2, B_4, ..., B_{2n} via tangent numbers:
//   B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1)).
inline std::vector<Rational> bernoulli_even_table(int n) {
  std::vector<BigInt> t(n + 1);
  t[1] = 1;
  for (int k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
  for (int k = 2; k <= n; ++k)
    for (int j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];

  std::vector<Rational> out(n + 1);
  for (int k = 1; k <= n; ++k) {
    BigInt four_k = BigInt(1) << (2 * k);
    BigInt num = 2 * k * t[k];
    if (k % 2 == 0) num = -num;
    out[k] = Rational(num, four_k * (four_k - 1));
  }
  return out;
}

class BernoulliCache {
 public:
  static BernoulliCache& instance() {
    static BernoulliCache cache;
    return cache;
  }

  // B_{2k}, computed lazily in capacity-doubling chunks.
  Rational get(int k) {
    std::lock_guard lock(mu_);
    if (k >= static_cast<int>(table_.size())) {
      int cap = std::max<int>(64, static_cast<int>(table_.size()));
      while (cap <= k) cap *= 2;
      cap = std::min(cap, kBernoulliTableLimit / 2);
      table_ = bernoulli_even_table(cap);
    }
    return table_[k];
  }

 private:
  std::mutex mu_;
  std::vector<Rational> table_;
};

}  // namespace detail

/// Exact Bernoulli number B_m for even m in [2, kBernoulliTableLimit].
inline Rational bernoulli(int m) {
  if (m < 2 || m % 2 != 0)
    throw Error(ErrorKind::DomainError, "bernoulli: index must be even and >= 2");
  if (m > kBernoulliTableLimit)
    throw Error(ErrorKind::OutOfTable, "bernoulli: index " + std::to_string(m) +
                                           " beyond table limit " +
                                           std::to_string(kBernoulliTableLimit));
  return detail::BernoulliCache::instance().get(m / 2);
}

/// Rational -> Real at the precision of Real.
template <class Real>
Real rational_to(const Rational& q) {
  if constexpr (std::is_floating_point_v<Real>) {
    return static_cast<Real>(mp_real<40>(q));
  } else {
    return Real(q);
  }
}

namespace detail {

// Per-type table of B_{2k}/(2k)!, used by the Euler-Maclaurin tail of zeta,
// and B_{2k}/(2k(2k-1)), used by the Stirling series. Entries are pure
// constants; the mutex only guards growth.
template <class Real>
class BernoulliRealTables {
 public:
  static BernoulliRealTables& instance() {
    static BernoulliRealTables t;
    return t;
  }

  // Copies out the first n entries (index 1..n) of both tables.
  void ensure(int n, std::vector<Real>& over_factorial, std::vector<Real>& stirling) {
    {
      std::lock_guard lock(mu_);
      grow(n);
      over_factorial.assign(over_factorial_.begin(), over_factorial_.begin() + n + 1);
      stirling.assign(stirling_.begin(), stirling_.begin() + n + 1);
    }
  }

  Real over_factorial(int k) {
    std::lock_guard lock(mu_);
    grow(k);
    return over_factorial_[k];
  }

  Real stirling(int k) {
    std::lock_guard lock(mu_);
    grow(k);
    return stirling_[k];
  }

 private:
  void grow(int n) {
    if (2 * n > kBernoulliTableLimit)
      throw Error(ErrorKind::OutOfTable, "Bernoulli coefficient table exhausted");
    if (n < static_cast<int>(over_factorial_.size())) return;
    int old = static_cast<int>(over_factorial_.size());
    if (old == 0) {
      over_factorial_.push_back(Real(0));
      stirling_.push_back(Real(0));
      factorial_ = 1;
      old = 1;
    }
    for (int k = old; k <= n; ++k) {
      factorial_ *= BigInt(2 * k - 1) * BigInt(2 * k);
      Rational b = bernoulli(2 * k);
      over_factorial_.push_back(rational_to<Real>(b / Rational(factorial_)));
      stirling_.push_back(rational_to<Real>(b / Rational(BigInt(2 * k) * BigInt(2 * k - 1))));
    }
  }

  std::mutex mu_;
  std::vector<Real> over_factorial_;
  std::vector<Real> stirling_;
  BigInt factorial_ = 1;
};

}  // namespace detail

}  // namespace rhv
