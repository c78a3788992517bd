#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rhv {

/// Failure categories raised by the numeric kernels, quadrature, series and
/// criteria layers. Every thrown rhv::Error carries exactly one kind.
enum class ErrorKind {
  PoleAtOne,
  PrecisionUnreachable,
  SingularPoint,
  ZeroDenominator,
  StepCollapse,
  GammaPole,
  OutOfTable,
  NonConvergent,
  SingularWeight,
  UnboundedTail,
  ArgumentNotDominant,
  InvalidParams,
  DomainError,
  ConfigError,
  IoError,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::StepCollapse: return "StepCollapse";
    case ErrorKind::GammaPole: return "GammaPole";
    case ErrorKind::OutOfTable: return "OutOfTable";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::SingularWeight: return "SingularWeight";
    case ErrorKind::UnboundedTail: return "UnboundedTail";
    case ErrorKind::ArgumentNotDominant: return "ArgumentNotDominant";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Working precision and tolerance policy shared by every numeric kernel.
///
/// `working_digits` drives series cutoffs and kernel error targets;
/// `target_digits` is the accuracy the quadrature and checks aim for. At least
/// ten guard digits separate the two.
struct PrecisionSpec {
  int working_digits = 50;
  int target_digits = 40;
  int max_refinement_levels = 60;

  static constexpr int kGuardDigits = 10;

  static PrecisionSpec make(int working, int target, int levels = 60) {
    PrecisionSpec p{working, target, levels};
    p.validate();
    return p;
  }

  /// Working precision with the default target (working - guard).
  static PrecisionSpec with_working(int working, int levels = 60) {
    return make(working, working - kGuardDigits, levels);
  }

  void validate() const {
    if (working_digits <= 0 || target_digits <= 0 || max_refinement_levels <= 0)
      throw Error(ErrorKind::InvalidParams, "precision fields must be positive");
    if (target_digits > working_digits)
      throw Error(ErrorKind::InvalidParams, "target_digits exceeds working_digits");
    if (working_digits < target_digits + kGuardDigits)
      throw Error(ErrorKind::InvalidParams,
                  "working_digits must exceed target_digits by at least 10 guard digits");
  }

  friend bool operator==(const PrecisionSpec&, const PrecisionSpec&) = default;
};

namespace mp = boost::multiprecision;

/// Fixed-precision MPFR real with `Digits` decimal digits, stack allocated.
template <unsigned Digits>
using mp_real = mp::number<mp::mpfr_float_backend<Digits, mp::allocate_stack>, mp::et_off>;

// Precision tiers. A run at N working digits uses the smallest tier holding
// N + 10 digits; the extra digits absorb cancellation in reflection and sums.
using Real40 = mp_real<40>;
using Real70 = mp_real<70>;
using Real130 = mp_real<130>;
using Real230 = mp_real<230>;
using Real320 = mp_real<320>;

template <class Real>
constexpr int type_digits() {
  return std::numeric_limits<Real>::digits10;
}

template <class Real>
Real pi() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
Real ln2() {
  return boost::math::constants::ln_two<Real>();
}

template <class Real>
Real euler_gamma() {
  return boost::math::constants::euler<Real>();
}

/// 10^(-digits) in the given type.
template <class Real>
Real pow10_neg(int digits) {
  using std::pow;
  return pow(Real(10), Real(-digits));
}

template <class Real>
Real eps_working(const PrecisionSpec& p) {
  return pow10_neg<Real>(p.working_digits);
}

template <class Real>
Real eps_target(const PrecisionSpec& p) {
  return pow10_neg<Real>(p.target_digits);
}

/// Decimal string with `digits` significant digits in scientific notation.
/// Output is a pure function of the value and `digits`.
template <class Real>
std::string to_decimal(const Real& x, int digits) {
  if constexpr (std::is_floating_point_v<Real>) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", std::max(1, std::min(digits, 17)) - 1, x);
    return buf;
  } else {
    if (x == 0) return "0";
    return x.str(digits, std::ios_base::scientific);
  }
}

/// log10 of |x| as a double, safe for magnitudes far outside double range.
template <class Real>
double log10_abs(const Real& x) {
  using std::abs;
  using std::log10;
  if (x == 0) return -std::numeric_limits<double>::infinity();
  if constexpr (std::is_floating_point_v<Real>) {
    return std::log10(std::abs(x));
  } else {
    return static_cast<double>(log10(abs(x)));
  }
}

template <class Real>
double to_double(const Real& x) {
  return static_cast<double>(x);
}

}  // namespace rhv

namespace rhv {

/// sin and cos of the same argument in one call (mpfr_sin_cos for MPFR types).
template <class Real>
void sincos(const Real& x, Real& s, Real& c) {
  if constexpr (std::is_floating_point_v<Real>) {
    s = std::sin(x);
    c = std::cos(x);
  } else {
    mpfr_sin_cos(s.backend().data(), c.backend().data(), x.backend().data(), MPFR_RNDN);
  }
}

}  // namespace rhv
