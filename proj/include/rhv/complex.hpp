#pragma once

#include <cmath>
#include <ostream>

#include "rhv/precision.hpp"

namespace rhv {

/// Complex number over a high-precision real type. std::complex is only
/// specified for the built-in floating types, so the arithmetic the kernels
/// need lives here.
template <class Real>
struct ComplexPoint {
  Real re{0};
  Real im{0};

  ComplexPoint() = default;
  ComplexPoint(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  ComplexPoint(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  ComplexPoint& operator+=(const ComplexPoint& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexPoint& operator-=(const ComplexPoint& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexPoint& operator*=(const ComplexPoint& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  ComplexPoint& operator*=(const Real& k) {
    re *= k;
    im *= k;
    return *this;
  }
  ComplexPoint& operator/=(const ComplexPoint& o) {
    // Smith's algorithm keeps intermediate magnitudes bounded.
    using std::abs;
    if (abs(o.re) >= abs(o.im)) {
      Real r = o.im / o.re;
      Real d = o.re + o.im * r;
      Real nr = (re + im * r) / d;
      im = (im - re * r) / d;
      re = std::move(nr);
    } else {
      Real r = o.re / o.im;
      Real d = o.re * r + o.im;
      Real nr = (re * r + im) / d;
      im = (im * r - re) / d;
      re = std::move(nr);
    }
    return *this;
  }
  ComplexPoint& operator/=(const Real& k) {
    re /= k;
    im /= k;
    return *this;
  }

  friend ComplexPoint operator+(ComplexPoint a, const ComplexPoint& b) { return a += b; }
  friend ComplexPoint operator-(ComplexPoint a, const ComplexPoint& b) { return a -= b; }
  friend ComplexPoint operator*(ComplexPoint a, const ComplexPoint& b) { return a *= b; }
  friend ComplexPoint operator/(ComplexPoint a, const ComplexPoint& b) { return a /= b; }
  friend ComplexPoint operator*(ComplexPoint a, const Real& k) { return a *= k; }
  friend ComplexPoint operator*(const Real& k, ComplexPoint a) { return a *= k; }
  friend ComplexPoint operator/(ComplexPoint a, const Real& k) { return a /= k; }
  friend ComplexPoint operator-(const ComplexPoint& a) { return {-a.re, -a.im}; }

  friend std::ostream& operator<<(std::ostream& os, const ComplexPoint& z) {
    return os << '(' << z.re << ", " << z.im << ')';
  }
};

template <class Real>
ComplexPoint<Real> conj(const ComplexPoint<Real>& z) {
  return {z.re, -z.im};
}

template <class Real>
Real norm2(const ComplexPoint<Real>& z) {
  return z.re * z.re + z.im * z.im;
}

template <class Real>
Real abs(const ComplexPoint<Real>& z) {
  using std::hypot;
  return hypot(z.re, z.im);
}

/// Principal argument in (-pi, pi].
template <class Real>
Real arg(const ComplexPoint<Real>& z) {
  using std::atan2;
  return atan2(z.im, z.re);
}

template <class Real>
ComplexPoint<Real> exp(const ComplexPoint<Real>& z) {
  using std::cos;
  using std::exp;
  using std::sin;
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

/// Principal logarithm.
template <class Real>
ComplexPoint<Real> log(const ComplexPoint<Real>& z) {
  using std::log;
  return {log(abs(z)), arg(z)};
}

/// base^z for real base > 0.
template <class Real>
ComplexPoint<Real> pow(const Real& base, const ComplexPoint<Real>& z) {
  using std::log;
  return exp(z * log(base));
}

/// e^{i*theta}
template <class Real>
ComplexPoint<Real> cis(const Real& theta) {
  using std::cos;
  using std::sin;
  return {cos(theta), sin(theta)};
}

template <class Real>
bool is_finite(const ComplexPoint<Real>& z) {
  using boost::math::isfinite;
  return isfinite(z.re) && isfinite(z.im);
}

}  // namespace rhv
