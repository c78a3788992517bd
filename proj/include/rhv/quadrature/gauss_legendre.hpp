#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "rhv/precision.hpp"

namespace rhv::quad {

/// Gauss-Legendre rule on [-1, 1]: nodes x_i > 0 with weights, plus the
/// centre node when the order is odd.
template <class Real>
struct GaussLegendreRule {
  int order = 0;
  std::vector<Real> nodes;    // positive half, descending
  std::vector<Real> weights;  // matching weights
  Real centre_weight{0};      // weight at x = 0 (odd orders only)
};

namespace detail {

// Newton iteration on P_n from the Tricomi initial guesses.
template <class Real>
GaussLegendreRule<Real> compute_gauss_legendre(int n) {
  using std::abs;
  using std::cos;
  GaussLegendreRule<Real> rule;
  rule.order = n;
  const Real eps = std::numeric_limits<Real>::epsilon() * 16;
  const int half = n / 2;
  auto legendre = [n](const Real& x, Real& p, Real& dp) {
    Real p0(1), p1 = x;
    for (int k = 2; k <= n; ++k) {
      Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1);
  };
  for (int i = 1; i <= half; ++i) {
    Real x = cos(pi<Real>() * (Real(i) - Real(1) / 4) / (Real(n) + Real(1) / 2));
    Real p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(x, p, dp);
      Real dx = p / dp;
      x -= dx;
      if (abs(dx) <= eps * abs(x)) break;
    }
    legendre(x, p, dp);
    rule.nodes.push_back(x);
    rule.weights.push_back(Real(2) / ((1 - x * x) * dp * dp));
  }
  if (n % 2 == 1) {
    Real p, dp;
    legendre(Real(0), p, dp);
    rule.centre_weight = Real(2) / (dp * dp);
  }
  return rule;
}

}  // namespace detail

/// Cached rule of order n for the type Real.
template <class Real>
const GaussLegendreRule<Real>& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussLegendreRule<Real>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule<Real>>(detail::compute_gauss_legendre<Real>(n));
  return *slot;
}

/// Panel order used at a given working precision.
inline int gauss_legendre_order(int working_digits) {
  int n = working_digits / 2 + 10;
  return n < 12 ? 12 : (n > 128 ? 128 : n);
}

/// Applies the rule to f on [lo, hi].
template <class Real, class F>
Real gauss_legendre_apply(const GaussLegendreRule<Real>& rule, const Real& lo, const Real& hi,
                          F&& f) {
  Real c = (lo + hi) / 2;
  Real d = (hi - lo) / 2;
  Real sum(0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    Real off = d * rule.nodes[i];
    sum += rule.weights[i] * (f(c - off) + f(c + off));
  }
  if (rule.order % 2 == 1) sum += rule.centre_weight * f(c);
  return sum * d;
}

}  // namespace rhv::quad
