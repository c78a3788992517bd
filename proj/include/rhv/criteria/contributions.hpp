#pragma once

#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>

#include "rhv/complex.hpp"
#include "rhv/frequency.hpp"
#include "rhv/quadrature/integrate.hpp"

namespace rhv {

/// A hypothetical zero rho = sigma + i t of multiplicity `order`, t > 0.
template <class Real>
struct ZeroSpec {
  Real sigma;
  Real t;
  int order = 1;

  void validate() const {
    if (order < 1) throw Error(ErrorKind::InvalidParams, "zero order must be at least 1");
    if (!(t > 0)) throw Error(ErrorKind::InvalidParams, "zero ordinate must be positive");
  }
};

/// Which equality a pole term belongs to; each is returned in the
/// normalisation of that equality.
enum class PoleFamily {
  COSH,     // (1/2) ln((1 - sin a(1-b)) / (1 + sin a(1-b)))
  COSH_SQ,  // pi int_0^{1-b} x / cos^2(ax) dx
  EXP_REAL, // (pi/a) sin(a(1-b))
  EXP_IMAG, // (pi/a) (1 - cos(a(1-b)))
};

/// Contribution of the pole at s = 1.
template <class Real>
Real pole_contribution(const Frequency<Real>& a, const Real& b, PoleFamily family) {
  using boost::math::cos_pi;
  using boost::math::sin_pi;
  using std::log;
  const Real c = 1 - b;
  const Real theta_over_pi = a.over_pi() * c;  // a(1-b)/pi
  if (c == 0) return Real(0);
  switch (family) {
    case PoleFamily::COSH:
    case PoleFamily::COSH_SQ:
      if (!(theta_over_pi < Real(1) / 2))
        throw Error(ErrorKind::DomainError, "pole term requires a(1-b) < pi/2");
      break;
    default:
      break;
  }
  switch (family) {
    case PoleFamily::COSH: {
      // (1 - sin x)/(1 + sin x) = tan^2(pi/4 - x/2).
      Real u = Real(1) / 4 - theta_over_pi / 2;
      if (u == 0) throw Error(ErrorKind::DomainError, "pole term diverges at a(1-b) = pi/2");
      return log(sin_pi(u) / cos_pi(u));
    }
    case PoleFamily::COSH_SQ: {
      // int_0^c x sec^2(ax) dx = c tan(ac)/a + ln cos(ac)/a^2.
      Real av = a.value();
      Real s = sin_pi(theta_over_pi), co = cos_pi(theta_over_pi);
      return pi<Real>() * (c * s / (co * av) + log(co) / (av * av));
    }
    case PoleFamily::EXP_REAL:
      return a.sin_of(c) / a.over_pi();
    case PoleFamily::EXP_IMAG:
      return a.one_minus_cos_of(c) / a.over_pi();
  }
  return Real(0);
}

/// -(pi/a) sum_{k=1}^{floor(-b/2)} (1 - cos(a(-2k - b))): the trivial zeros on
/// the real segment of the contour, with the sign they carry in the equality.
template <class Real>
Real trivial_zero_contribution(const Frequency<Real>& a, const Real& b) {
  using std::floor;
  Real sum(0);
  if (b < 0) {
    long k_max = static_cast<long>(to_double(floor(-b / 2)));
    for (long k = 1; k <= k_max; ++k) sum += a.one_minus_cos_of(Real(-2 * k) - b);
  }
  return -sum / a.over_pi();
}

/// 2 pi l int_0^{sigma-b} cos(ax) cosh(at) / (cos^2(ax) cosh^2(at) +
/// sin^2(ax) sinh^2(at)) dx, the per-zero term of the cosh-weighted equality.
/// Evaluated after dividing through by cosh^2(at), so large t only makes the
/// value small.
template <class Real>
Real zero_contribution_cosh(const ZeroSpec<Real>& zero, const Frequency<Real>& a, const Real& b,
                            const PrecisionSpec& prec) {
  using std::cosh;
  using std::tanh;
  zero.validate();
  if (zero.sigma < b) throw Error(ErrorKind::DomainError, "zero contribution requires b <= sigma");
  if (!(a.over_pi() * (1 - b) < Real(1) / 2))
    throw Error(ErrorKind::DomainError, "zero contribution requires a(1-b) < pi/2");
  if (zero.sigma == b) return Real(0);
  const Real at = a.value() * zero.t;
  const Real th = tanh(at);
  const Real sech = 1 / cosh(at);
  auto f = [&](const Real& x) {
    Real c = a.cos_of(x), s = a.sin_of(x);
    return c * sech / (c * c + s * s * th * th);
  };
  Real integral = quad::integrate_finite<Real>(f, Real(0), Real(zero.sigma - b), prec);
  return 2 * pi<Real>() * zero.order * integral;
}

/// (2 pi l e^{-at}/a) [sin(a(sigma-b)) + i (1 - cos(a(sigma-b)))], the per-zero
/// term of the exponential-weight equalities.
template <class Real>
ComplexPoint<Real> zero_contribution_exp(const ZeroSpec<Real>& zero, const Frequency<Real>& a,
                                         const Real& b) {
  using std::exp;
  zero.validate();
  if (zero.sigma < b) throw Error(ErrorKind::DomainError, "zero contribution requires b <= sigma");
  const Real x = zero.sigma - b;
  const Real scale = 2 * pi<Real>() * zero.order * exp(-a.value() * zero.t) / a.value();
  return {scale * a.sin_of(x), scale * a.one_minus_cos_of(x)};
}

/// I(t_k) = -2 pi l int_0^{sigma-b} [x(cos^2 cosh^2 - sin^2 sinh^2) -
/// 2t sin cos sinh cosh] / (cos^2 cosh^2 + sin^2 sinh^2)^2 dx, arguments ax
/// and at. Divided through by cosh^4(at) before integrating.
template <class Real>
Real zero_contribution_arg(const ZeroSpec<Real>& zero, const Frequency<Real>& a, const Real& b,
                           const PrecisionSpec& prec) {
  using std::cosh;
  using std::tanh;
  zero.validate();
  if (zero.sigma < b) throw Error(ErrorKind::DomainError, "zero contribution requires b <= sigma");
  if (!(2 * a.over_pi() * (zero.sigma - b) < 1))
    throw Error(ErrorKind::DomainError, "zero contribution requires 2a(sigma-b) < pi");
  if (zero.sigma == b) return Real(0);
  const Real at = a.value() * zero.t;
  const Real th = tanh(at);
  const Real sech = 1 / cosh(at);
  const Real sech2 = sech * sech;
  auto f = [&](const Real& x) {
    Real c = a.cos_of(x), s = a.sin_of(x);
    Real den = c * c + s * s * th * th;
    Real num = x * (c * c - s * s * th * th) - 2 * zero.t * s * c * th;
    return num * sech2 / (den * den);
  };
  Real integral = quad::integrate_finite<Real>(f, Real(0), Real(zero.sigma - b), prec);
  return -2 * pi<Real>() * zero.order * integral;
}

}  // namespace rhv
