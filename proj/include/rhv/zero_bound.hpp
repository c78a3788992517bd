#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rhv/precision.hpp"

namespace rhv {

/// Main term (t/2pi)(ln(t/2pi) - 1) + 7/8 of the zero-counting function.
template <class Real>
Real counting_main_term(const Real& t, const PrecisionSpec& = {}) {
  using std::log;
  const Real two_pi = 2 * pi<Real>();
  if (!(t > two_pi)) throw Error(ErrorKind::DomainError, "counting_main_term requires t > 2 pi");
  Real u = t / two_pi;
  return u * (log(u) - 1) + Real(7) / 8;
}

/// Backlund's bound on the remainder: 0.137 ln t + 0.443 ln ln t + 4.350.
template <class Real>
Real backlund_Q_bound(const Real& t) {
  using std::exp;
  using std::log;
  if (!(t > exp(Real(1)))) throw Error(ErrorKind::DomainError, "backlund_Q_bound requires t > e");
  return Real("0.137") * log(t) + Real("0.443") * log(log(t)) + Real("4.350");
}

enum class BoundFamily { REAL_PART, IMAG_PART };

constexpr std::string_view to_string(BoundFamily f) {
  return f == BoundFamily::REAL_PART ? "REAL_PART" : "IMAG_PART";
}

/// 2 pi k / ln k, the height of the k-th zero to leading order. An estimate,
/// not a verified height.
template <class Real>
Real T_from_zero_count(const Real& k, const PrecisionSpec& = {}) {
  using std::log;
  if (!(k >= 1000)) throw Error(ErrorKind::DomainError, "T_from_zero_count requires k >= 1000");
  return 2 * pi<Real>() * k / log(k);
}

template <class Real>
struct BoundParams {
  Real a{1};
  Real T{"3.3e9"};
  std::optional<Real> k;  // when set, T is 2 pi k / ln k

  /// T with the zero-count extrapolation applied.
  Real height() const { return k ? T_from_zero_count(*k) : T; }

  void validate() const {
    if (!(a > 0)) throw Error(ErrorKind::InvalidParams, "bound: a must be positive");
    if (k && !(*k >= 1000)) throw Error(ErrorKind::InvalidParams, "bound: k must be at least 1000");
    if (!(height() >= 1000)) throw Error(ErrorKind::InvalidParams, "bound: T must be at least 1000");
  }
};

template <class Real>
struct BoundResult {
  Real log10_bound{0};  // log10 of the bound on |I|
  Real prefactor_c{0};  // |I| < c e^{-aT}
  Real T{0};
  BoundFamily family = BoundFamily::REAL_PART;
};

/// Coefficients of the closed-form bound: 2 pi times Backlund's 0.137, 4.35
/// and 0.443, as printed to three decimals.
struct BoundCoefficients {
  double c_log = 0.861;
  double c_const = 27.332;
  double c_loglog = 2.784;
};

/// The same coefficients recomputed from Backlund's constants.
template <class Real>
BoundCoefficients derived_bound_coefficients() {
  const Real two_pi = 2 * pi<Real>();
  return {to_double(Real(two_pi * Real("0.137"))), to_double(Real(two_pi * Real("4.35"))),
          to_double(Real(two_pi * Real("0.443")))};
}

/// Largest difference between the printed and recomputed coefficients.
template <class Real>
double coefficient_drift(const BoundCoefficients& printed = {}) {
  const BoundCoefficients d = derived_bound_coefficients<Real>();
  return std::max({std::fabs(printed.c_log - d.c_log), std::fabs(printed.c_const - d.c_const),
                   std::fabs(printed.c_loglog - d.c_loglog)});
}

/// Throws unless the printed coefficients match their derivation to three
/// decimals (one unit in the last printed place).
template <class Real>
void verify_bound_coefficients(const BoundCoefficients& printed = {}) {
  if (coefficient_drift<Real>(printed) > 1e-3)
    throw Error(ErrorKind::InvalidParams, "bound coefficients drift from 2 pi x Backlund's constants");
}

/// Bound on the contribution of zeros off the critical line to the
/// exponential-weight equalities, all zeros below T being on the line:
///   c = (1/2a^3)(0.861 ln T + ln T/a + 27.332 + 2.784/(a ln^2 T) + 0.861/(aT)
///       + 1/(a^3 T)),   |I| < c e^{-aT}.
/// The imaginary-part family has |1 - cos| <= 2 in place of |sin| <= 1, which
/// doubles c.
template <class Real>
BoundResult<Real> bound_I(const BoundParams<Real>& params, BoundFamily family,
                          const PrecisionSpec& = {}, const BoundCoefficients& coef = {}) {
  using std::exp;
  using std::log;
  using std::log10;
  params.validate();
  verify_bound_coefficients<Real>(coef);
  const Real& a = params.a;
  const Real T = params.height();
  const Real lt = log(T);
  Real inner = Real(coef.c_log) * lt + lt / a + Real(coef.c_const) +
               Real(coef.c_loglog) / (a * lt * lt) + Real(coef.c_log) / (a * T) +
               1 / (a * a * a * T);
  Real c = inner / (2 * a * a * a);
  if (family == BoundFamily::IMAG_PART) c *= 2;
  BoundResult<Real> r;
  r.prefactor_c = c;
  r.T = T;
  r.family = family;
  r.log10_bound = log10(c) - a * T * log10(exp(Real(1)));
  return r;
}

/// {family, a, T, prefactor_c, log10_bound}, numbers as decimal strings.
template <class Real>
nlohmann::ordered_json to_json(const BoundResult<Real>& r, const Real& a, int digits = 20) {
  return {
      {"family", std::string(to_string(r.family))},
      {"a", to_decimal(a, digits)},
      {"T", to_decimal(r.T, digits)},
      {"prefactor_c", to_decimal(r.prefactor_c, digits)},
      {"log10_bound", to_decimal(r.log10_bound, digits)},
  };
}

}  // namespace rhv
