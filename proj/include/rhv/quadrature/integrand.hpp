#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rhv/branch.hpp"
#include "rhv/frequency.hpp"
#include "rhv/zeros.hpp"
#include "rhv/zeta.hpp"

namespace rhv::quad {

enum class IntegrandKind {
  LOG_ABS_ZETA_VERTICAL,   // ln|zeta(b + it)|
  ARG_ZETA_VERTICAL,       // arg zeta(b + it) on a tracked branch
  LOG_ABS_ZETA_REAL_AXIS,  // ln|zeta(b + x)|
  ARG_GAMMA_VERTICAL,      // Gamma-argument combinations, supplied as a callable
  CUSTOM,
};

// UNIT is w = 1 on a finite interval (no tail).
enum class WeightKind { EXP_DECAY, SECH, SECH_SQ_TIMES_T, SIN, COS, UNIT };

/// Weight function w(t) with frequency or decay rate a.
template <class Real>
struct Weight {
  WeightKind kind = WeightKind::EXP_DECAY;
  Frequency<Real> a = Frequency<Real>::from_pi_multiple(Real(1));

  bool decaying() const {
    return kind == WeightKind::EXP_DECAY || kind == WeightKind::SECH ||
           kind == WeightKind::SECH_SQ_TIMES_T;
  }

  Real operator()(const Real& t) const {
    using std::exp;
    switch (kind) {
      case WeightKind::EXP_DECAY:
        return exp(-a.value() * t);
      case WeightKind::SECH: {
        Real e = exp(-a.value() * t);
        return 2 * e / (1 + e * e);
      }
      case WeightKind::SECH_SQ_TIMES_T: {
        Real e = exp(-2 * a.value() * t);
        return 4 * t * e / ((1 + e) * (1 + e));
      }
      case WeightKind::SIN:
        return a.sin_of(t);
      case WeightKind::COS:
        return a.cos_of(t);
      case WeightKind::UNIT:
        return Real(1);
    }
    return Real(0);
  }

  /// Sup of |w| on [t, oo), used to scale skipped neighbourhoods.
  Real sup_from(const Real& t) const {
    using std::exp;
    switch (kind) {
      case WeightKind::EXP_DECAY:
      case WeightKind::SECH:
        return (*this)(t);
      case WeightKind::SECH_SQ_TIMES_T: {
        // t sech^2(at) <= 4(1+t) e^{-2at}; its maximum is below 1/a.
        Real bound = 4 * (1 + t) * exp(-2 * a.value() * t);
        Real cap = Real(1) / a.value();
        return bound < cap ? bound : cap;
      }
      default:
        return Real(1);
    }
  }
};

/// |f(t)| <= (c1 + c2 ln(2 + t)) (1 + t)^p for t >= 0, with p in {0, 1}.
struct Envelope {
  double c1 = 5;
  double c2 = 2;
  int p = 0;
};

/// Envelope of ln|zeta(b + it)|. For b > 1 the Euler product gives
/// |ln|zeta|| <= ln zeta(b); inside and left of the strip the convexity
/// growth t^{max(0, 1/2 - b)} enters through c2.
template <class Real>
Envelope log_abs_zeta_envelope(const Real& b, const PrecisionSpec& prec) {
  using std::log;
  double bd = to_double(b);
  if (bd > 1) {
    double lz = to_double(log(zeta(b, prec)));
    return {std::max(5.0, lz + 1), 2, 0};
  }
  if (bd >= 0) return {5, 2, 0};
  return {5 + 2 * std::fabs(bd), 2 + (0.5 - bd), 0};
}

/// Envelope of the tracked arg zeta(b + it): O(ln t) for b >= 1/2, and
/// O(t ln t) to the left of the critical line.
inline Envelope arg_zeta_envelope(double b) {
  if (b >= 0.5) return {20, 2, 0};
  return {5 + std::fabs(b), 1, 1};
}

/// Envelope of sums of two Gamma arguments at height t/2 (or one at height t).
inline Envelope arg_gamma_envelope() { return {10, 2, 1}; }

/// One integrand f times a weight w. The kind decides how f is evaluated;
/// CUSTOM and ARG_GAMMA_VERTICAL carry their own callable.
template <class Real>
struct IntegrandSpec {
  IntegrandKind kind = IntegrandKind::CUSTOM;
  Weight<Real> weight;
  Real b{0};
  // Interior or endpoint points where f has an integrable log singularity.
  std::vector<Real> singular_points;
  // Points where f jumps (arg zeta across zeros on the line).
  std::vector<Real> breakpoints;
  // Sorted ordinates where a LITTLEWOOD arg adds 2 pi (zeros right of the line).
  std::vector<Real> arg_jumps;
  std::function<Real(const Real&)> custom;
  std::shared_ptr<const ArgTracker<Real>> tracker;
  Envelope envelope;
  // Real-axis integrands: f(x) = sum_j ln|zeta(shift_j + x)|; used by the
  // oscillatory tail bound.
  std::vector<Real> real_axis_shifts;
  std::string label;

  Real kernel(const Real& t, const PrecisionSpec& prec) const {
    switch (kind) {
      case IntegrandKind::LOG_ABS_ZETA_VERTICAL:
        return log_abs_zeta(b, t, prec);
      case IntegrandKind::ARG_ZETA_VERTICAL: {
        auto crossed = std::lower_bound(arg_jumps.begin(), arg_jumps.end(), t) - arg_jumps.begin();
        return tracker->value(t) + 2 * pi<Real>() * Real(static_cast<long>(crossed));
      }
      case IntegrandKind::LOG_ABS_ZETA_REAL_AXIS:
        return log_abs_zeta(Real(b + t), Real(0), prec);
      case IntegrandKind::ARG_GAMMA_VERTICAL:
      case IntegrandKind::CUSTOM:
        return custom(t);
    }
    return Real(0);
  }

  Real operator()(const Real& t, const PrecisionSpec& prec) const {
    return weight(t) * kernel(t, prec);
  }
};

template <class Real>
void sort_unique(std::vector<Real>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// Singular abscissae of ln|zeta(b + x)| on x >= 0: the pole and the trivial
/// zeros.
template <class Real>
std::vector<Real> real_axis_singularities(const Real& b) {
  using std::floor;
  std::vector<Real> pts;
  if (1 - b >= 0) pts.push_back(1 - b);
  for (int k = 1; -2 * k - b >= 0; ++k) pts.push_back(Real(-2 * k) - b);
  sort_unique(pts);
  return pts;
}

/// True when b is a trivial zero (-2, -4, ...).
template <class Real>
bool is_trivial_zero(const Real& b) {
  using std::floor;
  return b < 0 && floor(b / 2) == b / 2;
}

/// ln|zeta(b + it)| against `weight` on [0, t_max]. On the critical line the
/// zeros up to t_max become log singularities.
template <class Real>
IntegrandSpec<Real> log_abs_zeta_vertical(const Real& b, Weight<Real> weight, double t_max,
                                          const PrecisionSpec& prec) {
  IntegrandSpec<Real> spec;
  spec.kind = IntegrandKind::LOG_ABS_ZETA_VERTICAL;
  spec.weight = weight;
  spec.b = b;
  spec.envelope = log_abs_zeta_envelope(b, prec);
  if (b == Real(1) / 2) spec.singular_points = critical_line_zeros<Real>(0, t_max, prec);
  if (b == 1 || is_trivial_zero(b)) spec.singular_points.insert(spec.singular_points.begin(), Real(0));
  spec.label = "ln|zeta(b+it)|";
  return spec;
}

/// arg zeta(b + it) on the branch of `branch` against `weight` on [0, t_max].
/// Zeros on the line are jump points of the branch; left of the critical line
/// the LITTLEWOOD convention adds 2 pi at every zero ordinate.
template <class Real>
IntegrandSpec<Real> arg_zeta_vertical(const BranchConfig<Real>& branch, Weight<Real> weight,
                                      double t_max, const PrecisionSpec& prec,
                                      ArgConvention convention = ArgConvention::LITTLEWOOD) {
  IntegrandSpec<Real> spec;
  spec.kind = IntegrandKind::ARG_ZETA_VERTICAL;
  spec.weight = weight;
  spec.b = branch.b;
  spec.envelope = arg_zeta_envelope(to_double(branch.b));
  auto tracker = std::make_shared<ArgTracker<Real>>(branch, prec);
  tracker->build(Real(t_max));
  spec.tracker = tracker;
  if (branch.b == Real(1) / 2) spec.breakpoints = critical_line_zeros<Real>(0, t_max, prec);
  if (convention == ArgConvention::LITTLEWOOD && branch.b < Real(1) / 2) {
    // Every nontrivial zero lies right of a line with b <= 0.
    spec.arg_jumps = strip_zero_ordinates<Real>(t_max, prec);
    spec.breakpoints = spec.arg_jumps;
  }
  spec.label = "arg zeta(b+it)";
  return spec;
}

/// ln|zeta(b + x)| against an oscillatory weight on the real axis.
template <class Real>
IntegrandSpec<Real> log_abs_zeta_real_axis(const Real& b, Weight<Real> weight) {
  IntegrandSpec<Real> spec;
  spec.kind = IntegrandKind::LOG_ABS_ZETA_REAL_AXIS;
  spec.weight = weight;
  spec.b = b;
  spec.singular_points = real_axis_singularities(b);
  spec.real_axis_shifts = {b};
  spec.label = "ln|zeta(b+x)|";
  return spec;
}

}  // namespace rhv::quad
