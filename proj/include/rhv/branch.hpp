#pragma once

#include <algorithm>
#include <cmath>
#include <string_view>
#include <vector>

#include "rhv/zeta.hpp"

namespace rhv {

/// A vertical line Re s = b together with the value of arg zeta(b + i eps)
/// as eps -> 0+, which fixes the continuous branch along the line.
template <class Real>
struct BranchConfig {
  Real b;
  Real initial_arg;

  /// Branch conventions of the equalities:
  ///   b > 1          -> 0 (zeta real and positive on the axis)
  ///   1/2 <= b < 1   -> -pi
  ///   b <= 0         -> -pi + floor(-b/2) pi
  /// Lines through the pole, through a trivial zero, or with 0 < b < 1/2 have
  /// no stated convention and are rejected.
  static BranchConfig for_line(const Real& b) {
    using std::floor;
    if (b == 1) throw Error(ErrorKind::DomainError, "branch: line through the pole s = 1");
    if (b > 1) return {b, Real(0)};
    if (b >= Real(1) / 2) return {b, -pi<Real>()};
    if (b > 0)
      throw Error(ErrorKind::DomainError, "branch: no convention for 0 < b < 1/2");
    Real half = -b / 2;
    if (b < 0 && floor(half) == half)
      throw Error(ErrorKind::DomainError, "branch: line through a trivial zero");
    return {b, -pi<Real>() + floor(half) * pi<Real>()};
  }
};

/// How arg zeta(b + it) is continued past the ordinates of zeros lying to the
/// right of the line.
///
/// LITTLEWOOD continues along horizontal lines from Re s = +oo, the
/// determination the contour argument works with; it exceeds the vertically
/// continuous one by 2 pi for every such zero below t. CONTINUOUS is the
/// vertically continuous branch. The two agree for b >= 1/2 when no zero lies
/// off the critical line.
enum class ArgConvention { LITTLEWOOD, CONTINUOUS };

constexpr std::string_view to_string(ArgConvention c) {
  return c == ArgConvention::LITTLEWOOD ? "LITTLEWOOD" : "CONTINUOUS";
}

/// Options for continuous argument tracking.
struct ArgTrackOptions {
  double initial_step = 0.125;
  // Zeros lying exactly on the path are passed on the right-limit convention
  // (as if the line were at b + 0): the argument jumps by +pi.
  bool allow_on_path_zeros = true;
};

/// Continuous determination of arg zeta(b + it), t >= 0, by phase unwrapping.
///
/// The march starts at t = 0 with the branch's initial value and advances with
/// step 1/8, halving whenever the principal phase increment reaches pi/2. A
/// step that still straddles a half turn after `max_refinement_levels`
/// halvings is a zero on the path; depending on the options it is crossed
/// with a +pi jump or reported as StepCollapse.
///
/// build() records checkpoints so that value() is a cheap local unwrap and
/// safe to call concurrently once the table covers the queried range.
template <class Real>
class ArgTracker {
 public:
  ArgTracker(BranchConfig<Real> branch, PrecisionSpec prec, ArgTrackOptions opts = {})
      : branch_(std::move(branch)), prec_(prec), opts_(opts) {
    Real p0 = principal(Real(0));
    checkpoints_.push_back({Real(0), nearest_representative(p0, branch_.initial_arg), p0});
  }

  const BranchConfig<Real>& branch() const { return branch_; }
  const PrecisionSpec& precision() const { return prec_; }

  /// Extends the checkpoint table to cover [0, t_max].
  void build(const Real& t_max) {
    while (checkpoints_.back().t < t_max) {
      Checkpoint next = step_towards(checkpoints_.back(), t_max);
      checkpoints_.push_back(std::move(next));
    }
  }

  const Real& covered_until() const { return checkpoints_.back().t; }

  /// Zeros crossed on the path while building (to the resolution of the
  /// halving cap).
  const std::vector<Real>& on_path_zeros() const { return on_path_zeros_; }

  /// arg zeta(b + it) on the tracked branch; requires build(t) beforehand.
  Real value(const Real& t) const {
    if (t < 0) throw Error(ErrorKind::DomainError, "arg tracking requires t >= 0");
    if (t > covered_until())
      throw Error(ErrorKind::DomainError, "arg tracker queried beyond its built range");
    auto it = std::upper_bound(checkpoints_.begin(), checkpoints_.end(), t,
                               [](const Real& x, const Checkpoint& c) { return x < c.t; });
    const Checkpoint& base = *(it - 1);
    if (base.t == t) return base.arg;
    // Accepted steps move the phase by less than a quarter turn, so the local
    // unwrap against the preceding checkpoint is unambiguous, except inside a
    // step that crossed a zero on the path, where the jump is +pi.
    Real d = wrap(principal(t) - base.principal);
    using std::abs;
    if (abs(d) >= pi<Real>() / 2) d = wrap(d - pi<Real>()) + pi<Real>();
    return base.arg + d;
  }

 private:
  struct Checkpoint {
    Real t;
    Real arg;
    Real principal;
  };

  Real principal(const Real& t) const {
    ComplexPoint<Real> z = zeta(ComplexPoint<Real>(branch_.b, t), prec_);
    if (z.re == 0 && z.im == 0)
      throw Error(ErrorKind::SingularPoint, "arg tracking: zeta vanishes on the path");
    return arg(z);
  }

  static Real wrap(Real d) {
    Real two_pi = 2 * pi<Real>();
    while (d > pi<Real>()) d -= two_pi;
    while (d <= -pi<Real>()) d += two_pi;
    return d;
  }

  static Real nearest_representative(const Real& principal_value, const Real& target) {
    Real two_pi = 2 * pi<Real>();
    double turns = std::round(to_double((target - principal_value) / two_pi));
    return principal_value + two_pi * Real(turns);
  }

  // One accepted step from `from` towards `limit`. The trial step starts at
  // twice the previous accepted one (capped at the initial step), so the
  // approach to a zero costs a few evaluations per halving of the distance.
  Checkpoint step_towards(const Checkpoint& from, const Real& limit) {
    using std::abs;
    using std::ldexp;
    const Real h_max(opts_.initial_step);
    const Real h_min = ldexp(h_max, -prec_.max_refinement_levels);
    const Real quarter_turn = pi<Real>() / 2;
    Real h = last_step_ * 2;
    if (h > h_max) h = h_max;
    for (;;) {
      Real t = from.t + h;
      if (t > limit) {
        t = limit;
        h = limit - from.t;
      }
      Real p = principal(t);
      Real d = wrap(p - from.principal);
      if (abs(d) < quarter_turn) {
        last_step_ = h;
        return {t, from.arg + d, p};
      }
      if (h <= h_min) {
        // A sign flip across a zero on the path gives an increment of +-pi.
        if (opts_.allow_on_path_zeros && abs(abs(d) - pi<Real>()) < Real(1e-3)) {
          on_path_zeros_.push_back(from.t + h / 2);
          last_step_ = h_max;
          // +pi plus the smooth drift over the step.
          return {t, from.arg + wrap(d - pi<Real>()) + pi<Real>(), p};
        }
        throw Error(ErrorKind::StepCollapse,
                    "arg tracking: step halving exhausted near t = " + to_decimal(t, 20));
      }
      h /= 2;
    }
  }

  BranchConfig<Real> branch_;
  PrecisionSpec prec_;
  ArgTrackOptions opts_;
  std::vector<Checkpoint> checkpoints_;
  std::vector<Real> on_path_zeros_;
  Real last_step_{0.0625};
};

/// arg zeta(b + it) on the continuous branch fixed by `branch`.
template <class Real>
Real arg_zeta_continuous(const BranchConfig<Real>& branch, const Real& t,
                         const PrecisionSpec& prec) {
  ArgTracker<Real> tracker(branch, prec);
  tracker.build(t);
  return tracker.value(t);
}

}  // namespace rhv
