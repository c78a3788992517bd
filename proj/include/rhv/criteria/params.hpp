#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "rhv/branch.hpp"
#include "rhv/frequency.hpp"
#include "rhv/precision.hpp"

namespace rhv {

enum class CaseId {
  EQ2,
  EQ3,
  EQ4,
  T1A,
  T1A_LIMIT,
  EQ6,
  EQ6A,
  EQ7,
  EQ7A,
  EQ8,
  EQ9,
  EQ9A,
  EQ9B,
  EQ9C,
  EQ10,
  EQ10_UNCONDITIONAL,
};

inline constexpr std::array<CaseId, 16> kAllCases{
    CaseId::EQ2,  CaseId::EQ3,  CaseId::EQ4,  CaseId::T1A,  CaseId::T1A_LIMIT, CaseId::EQ6,
    CaseId::EQ6A, CaseId::EQ7,  CaseId::EQ7A, CaseId::EQ8,  CaseId::EQ9,       CaseId::EQ9A,
    CaseId::EQ9B, CaseId::EQ9C, CaseId::EQ10, CaseId::EQ10_UNCONDITIONAL};

constexpr std::string_view to_string(CaseId c) {
  switch (c) {
    case CaseId::EQ2: return "EQ2";
    case CaseId::EQ3: return "EQ3";
    case CaseId::EQ4: return "EQ4";
    case CaseId::T1A: return "T1A";
    case CaseId::T1A_LIMIT: return "T1A_LIMIT";
    case CaseId::EQ6: return "EQ6";
    case CaseId::EQ6A: return "EQ6A";
    case CaseId::EQ7: return "EQ7";
    case CaseId::EQ7A: return "EQ7A";
    case CaseId::EQ8: return "EQ8";
    case CaseId::EQ9: return "EQ9";
    case CaseId::EQ9A: return "EQ9A";
    case CaseId::EQ9B: return "EQ9B";
    case CaseId::EQ9C: return "EQ9C";
    case CaseId::EQ10: return "EQ10";
    case CaseId::EQ10_UNCONDITIONAL: return "EQ10_UNCONDITIONAL";
  }
  return "?";
}

inline CaseId parse_case(std::string_view s) {
  for (CaseId c : kAllCases)
    if (to_string(c) == s) return c;
  throw Error(ErrorKind::InvalidParams, "unknown case '" + std::string(s) + "'");
}

/// How the printed Gamma-free term arg(-1/4 + it/2) of the b = -1/2 examples
/// is read: PLAIN takes it as written (the recursion Gamma(x+1) = x Gamma(x)
/// applied once), GAMMA as arg Gamma(-1/4 + it/2).
enum class GammaArgReading { PLAIN, GAMMA };

constexpr std::string_view to_string(GammaArgReading r) {
  return r == GammaArgReading::PLAIN ? "PLAIN" : "GAMMA";
}

inline GammaArgReading parse_gamma_reading(std::string_view s) {
  if (s == "PLAIN") return GammaArgReading::PLAIN;
  if (s == "GAMMA") return GammaArgReading::GAMMA;
  throw Error(ErrorKind::InvalidParams, "gamma-arg reading must be GAMMA or PLAIN");
}

inline ArgConvention parse_arg_convention(std::string_view s) {
  if (s == "LITTLEWOOD") return ArgConvention::LITTLEWOOD;
  if (s == "CONTINUOUS") return ArgConvention::CONTINUOUS;
  throw Error(ErrorKind::InvalidParams, "arg convention must be LITTLEWOOD or CONTINUOUS");
}

/// Parses a as a multiple of pi: "2pi", "2*pi", "pi/2", "3pi/4", or a plain
/// decimal.
template <class Real>
Frequency<Real> parse_frequency(std::string_view text) {
  std::string s(text);
  std::erase(s, ' ');
  auto number = [&](const std::string& part, const char* what) {
    if (part.empty()) return Real(1);
    std::size_t used = 0;
    try {
      (void)std::stod(part, &used);
    } catch (...) {
      used = 0;
    }
    if (used != part.size())
      throw Error(ErrorKind::InvalidParams, std::string("cannot parse ") + what + " '" + part + "'");
    return Real(part);
  };
  auto p = s.find("pi");
  if (p == std::string::npos) {
    Real v = number(s, "a");
    if (!(v > 0)) throw Error(ErrorKind::InvalidParams, "a must be positive");
    return Frequency<Real>::from_value(v);
  }
  std::string coef = s.substr(0, p);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  std::string rest = s.substr(p + 2);
  Real den(1);
  if (!rest.empty()) {
    if (rest[0] != '/') throw Error(ErrorKind::InvalidParams, "cannot parse a '" + s + "'");
    den = number(rest.substr(1), "denominator");
  }
  Real m = number(coef, "coefficient") / den;
  if (!(m > 0)) throw Error(ErrorKind::InvalidParams, "a must be positive");
  return Frequency<Real>::from_pi_multiple(m);
}

/// Parses b: a decimal or a fraction "p/q".
template <class Real>
Real parse_real(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto one = [](const std::string& part) {
    std::size_t used = 0;
    try {
      (void)std::stod(part, &used);
    } catch (...) {
      used = 0;
    }
    if (part.empty() || used != part.size())
      throw Error(ErrorKind::InvalidParams, "cannot parse number '" + part + "'");
    return Real(part);
  };
  if (slash == std::string::npos) return one(s);
  return one(s.substr(0, slash)) / one(s.substr(slash + 1));
}

/// One equality instance: the case, (a, b), and truncations.
template <class Real>
struct EqualityParams {
  CaseId case_id = CaseId::EQ2;
  Frequency<Real> a = Frequency<Real>::from_value(Real(1));
  Real b{2};
  Real t_max{0};  // vertical-integral truncation
  Real x_max{0};  // real-axis truncation
  int n_max = 1000;
  GammaArgReading gamma_reading = GammaArgReading::GAMMA;
  // Branch of arg zeta left of the critical line (EQ8 and the Gamma forms).
  ArgConvention arg_convention = ArgConvention::LITTLEWOOD;

  /// Defaults per case. Fixed-parameter cases use their printed (a, b);
  /// truncations follow the published runs where there are any, otherwise
  /// t_max is where the weight drops below 10^-(target+10).
  static EqualityParams defaults(CaseId c, const PrecisionSpec& prec) {
    using std::ceil;
    using std::log;
    EqualityParams p;
    p.case_id = c;
    auto set = [&](const Real& b, const Frequency<Real>& a) {
      p.b = b;
      p.a = a;
    };
    const auto pi_times = [](double m) { return Frequency<Real>::from_pi_multiple(Real(m)); };
    const Real half = Real(1) / 2;
    p.x_max = 200;
    p.t_max = 0;
    switch (c) {
      case CaseId::EQ2: set(Real(2), Frequency<Real>::from_value(Real(1))); break;
      case CaseId::EQ3: set(Real(3) / 4, Frequency<Real>::from_value(Real(1))); break;
      case CaseId::EQ4: set(half, pi_times(1)); p.t_max = 200; break;
      case CaseId::T1A: set(Real(3) / 4, Frequency<Real>::from_value(Real(1))); break;
      case CaseId::T1A_LIMIT: set(half, pi_times(1)); p.t_max = 50; break;
      case CaseId::EQ6:
      case CaseId::EQ7: set(Real(3) / 4, Frequency<Real>::from_value(Real(2))); break;
      case CaseId::EQ6A: set(half, pi_times(2)); p.t_max = 50; break;
      case CaseId::EQ7A: set(half, pi_times(1)); p.t_max = 50; break;
      case CaseId::EQ8:
      case CaseId::EQ9: set(Real(-7) / 2, pi_times(2)); p.t_max = 50; p.x_max = 250; break;
      case CaseId::EQ9A: set(-half, pi_times(2)); p.t_max = 50; break;
      case CaseId::EQ9B: set(-half, pi_times(4)); p.t_max = 50; break;
      case CaseId::EQ9C: set(Real(0), pi_times(4)); p.t_max = 50; break;
      case CaseId::EQ10: set(Real(1) / 4, pi_times(4)); p.t_max = 50; break;
      case CaseId::EQ10_UNCONDITIONAL:
        set(Real(-1), Frequency<Real>::from_pi_multiple(Real(2) / 3));
        break;
    }
    if (p.t_max == 0) p.t_max = auto_t_max(c, p.a, prec);
    return p;
  }

  static Real auto_t_max(CaseId c, const Frequency<Real>& a, const PrecisionSpec& prec) {
    using std::ceil;
    using std::log;
    Real rate = a.value();
    if (c == CaseId::T1A || c == CaseId::T1A_LIMIT) rate *= 2;
    Real t = ceil(Real(prec.target_digits + 10) * log(Real(10)) / rate + 2);
    return t < 10 ? Real(10) : t;
  }

  /// n with a = 2 pi n / (1/2 - b) (k = 2) or a = pi n / (1/2 - b) (k = 1),
  /// required to be a whole number.
  long integer_index(int k, const PrecisionSpec& prec, const char* what) const {
    using std::abs;
    using std::round;
    Real n = a.over_pi() * (Real(1) / 2 - b) / k;
    Real r = round(n);
    if (abs(n - r) > pow10_neg<Real>(prec.working_digits - 10) * (1 + abs(n)))
      throw Error(ErrorKind::InvalidParams, std::string(what) + ": n is not an integer");
    return static_cast<long>(to_double(r));
  }

  void validate(const PrecisionSpec& prec) const {
    using std::floor;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::InvalidParams, std::string(to_string(case_id)) + ": " + why);
    };
    if (!(a.over_pi() > 0)) fail("a must be positive");
    if (!(t_max > 0) || !(x_max > 0) || n_max <= 0) fail("truncations must be positive");
    const Real half = Real(1) / 2;
    const Real m = a.over_pi();
    auto fixed = [&](const Real& bb, const Real& mm) {
      if (b != bb || m != mm) fail("this case fixes a and b");
    };
    auto even_negative = [&] { return b < 0 && floor(b / 2) == b / 2; };
    switch (case_id) {
      case CaseId::EQ2:
        if (!(b >= 1)) fail("requires b >= 1");
        break;
      case CaseId::EQ3:
      case CaseId::T1A:
        if (!(b >= half && b < 1)) fail("requires 1 > b >= 1/2");
        if (!(m * (1 - b) < half)) fail("requires a(1-b) < pi/2");
        if (case_id == CaseId::T1A && a.value() < Real(1e-9)) fail("requires a >= 1e-9");
        break;
      case CaseId::EQ4:
      case CaseId::T1A_LIMIT:
      case CaseId::EQ7A:
        fixed(half, Real(1));
        break;
      case CaseId::EQ6A:
        fixed(half, Real(2));
        break;
      case CaseId::EQ6:
        if (!(b >= half && b < 1)) fail("requires 1 > b >= 1/2");
        if (!(m * (1 - b) <= 1)) fail("requires a(1-b) <= pi");
        break;
      case CaseId::EQ7:
        if (!(b >= half && b < 1)) fail("requires 1 > b >= 1/2");
        if (!(m * (1 - b) <= 2)) fail("requires a(1-b) <= 2 pi");
        break;
      case CaseId::EQ8:
      case CaseId::EQ9: {
        if (!(b <= 0)) fail("requires b <= 0");
        if (even_negative()) fail("the line passes through a trivial zero");
        long n = integer_index(2, prec, "a = 2 pi n/(1/2 - b)");
        if (n < 1 || Real(n) > 1 - 2 * b) fail("requires 1 <= n <= 1 - 2b");
        break;
      }
      case CaseId::EQ9A:
        fixed(-half, Real(2));
        break;
      case CaseId::EQ9B:
        fixed(-half, Real(4));
        break;
      case CaseId::EQ9C:
        fixed(Real(0), Real(4));
        break;
      case CaseId::EQ10: {
        if (!(b > 0 && b <= Real(1) / 4)) fail("requires 1/4 >= b > 0");
        long n = integer_index(1, prec, "a = pi n/(1/2 - b)");
        if (n < 1 || Real(n) > 1 / (2 * b) - 1) fail("requires 1 <= n <= 1/(2b) - 1");
        break;
      }
      case CaseId::EQ10_UNCONDITIONAL: {
        if (!(b >= -2 && b <= 0)) fail("requires -2 <= b <= 0");
        long n = integer_index(1, prec, "a = pi n/(1/2 - b)");
        if (n < 1) fail("requires n >= 1");
        break;
      }
    }
  }
};

}  // namespace rhv
