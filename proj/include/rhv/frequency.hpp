#pragma once

#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include "rhv/precision.hpp"

namespace rhv {

/// Weight frequency `a`, stored as its multiple of pi.
///
/// Every frequency in the equalities is a rational multiple of pi (pi, 2pi,
/// 2pi n/(1/2-b), ...). Keeping the multiple lets sin(a x) and cos(a x) hit
/// exact zeros at the node points the closed-form terms depend on.
template <class Real>
class Frequency {
 public:
  Frequency() = default;

  static Frequency from_pi_multiple(Real m) { return Frequency(std::move(m)); }
  static Frequency from_value(const Real& a) { return Frequency(a / pi<Real>()); }

  const Real& over_pi() const { return m_; }
  Real value() const { return m_ * pi<Real>(); }

  /// sin(a x)
  Real sin_of(const Real& x) const { return boost::math::sin_pi(m_ * x); }
  /// cos(a x)
  Real cos_of(const Real& x) const { return boost::math::cos_pi(m_ * x); }
  /// 1 - cos(a x) = 2 sin^2(a x / 2), free of cancellation.
  Real one_minus_cos_of(const Real& x) const {
    Real s = boost::math::sin_pi(m_ * x / 2);
    return 2 * s * s;
  }

  template <class Other>
  Frequency<Other> cast() const {
    return Frequency<Other>::from_pi_multiple(static_cast<Other>(m_));
  }

 private:
  explicit Frequency(Real m) : m_(std::move(m)) {}
  Real m_{1};
};

}  // namespace rhv
