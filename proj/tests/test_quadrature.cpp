#include <gtest/gtest.h>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <random>
#include <vector>

#include "rhv/quadrature.hpp"

using namespace rhv;
using namespace rhv::quad;
using R = Real70;

namespace {

const PrecisionSpec kPrec = PrecisionSpec::with_working(50);

template <class F>
IntegrandSpec<R> custom(F f, WeightKind kind, const R& a_over_pi) {
  IntegrandSpec<R> spec;
  spec.kind = IntegrandKind::CUSTOM;
  spec.custom = f;
  spec.weight.kind = kind;
  spec.weight.a = Frequency<R>::from_pi_multiple(a_over_pi);
  return spec;
}

// int_T^oo (c1 + c2 ln(2 + t)) e^{-alpha t} dt, by parts:
// e^{-alpha T}(c1 + c2 ln(2+T))/alpha + (c2/alpha) e^{2 alpha} E1(alpha (2 + T)).
R envelope_tail(double c1, double c2, const R& alpha, const R& T) {
  R e1 = -boost::math::expint(R(-alpha * (2 + T)));
  return exp(-alpha * T) * (c1 + c2 * log(2 + T)) / alpha + c2 / alpha * exp(2 * alpha) * e1;
}

}  // namespace

TEST(Integrate, ExponentialWeightOnFiniteRange) {
  auto spec = custom([](const R&) { return R(1); }, WeightKind::EXP_DECAY, R(2) / pi<R>());
  auto res = integrate(spec, R(40), kPrec);
  R exact = (1 - exp(R(-80))) / 2;
  EXPECT_EQ(res.cutoff, 40);
  EXPECT_LT(abs(res.value - exact), eps_target<R>(kPrec));
}

TEST(Integrate, SechWeightToInfinity) {
  auto spec = custom([](const R&) { return R(1); }, WeightKind::SECH, R(1));
  auto res = integrate(spec, R(1000), kPrec);
  EXPECT_LT(res.cutoff, 1000);
  EXPECT_LT(abs(res.value - R(1) / 2), eps_target<R>(kPrec));
  EXPECT_LE(abs(res.value - R(1) / 2), res.total_error() + eps_target<R>(kPrec));
}

TEST(Integrate, SechSquaredTimesT) {
  // int t sech^2(pi t) dt = ln 2 / pi^2
  auto spec = custom([](const R&) { return R(1); }, WeightKind::SECH_SQ_TIMES_T, R(1));
  auto res = integrate(spec, R(1000), kPrec);
  EXPECT_LT(abs(res.value - ln2<R>() / (pi<R>() * pi<R>())), eps_target<R>(kPrec));
}

TEST(Integrate, SechAtOtherRates) {
  for (const char* m : {"0.5", "2", "3.25"}) {
    auto spec = custom([](const R&) { return R(1); }, WeightKind::SECH, R(m));
    auto res = integrate(spec, R(1000), kPrec);
    // int sech(a t) dt = pi / (2a)
    EXPECT_LT(abs(res.value - R(1) / (2 * R(m))), eps_target<R>(kPrec)) << m;
  }
}

TEST(Integrate, CriticalLineAgainstSech) {
  const R b = R(1) / 2;
  Weight<R> w{WeightKind::SECH, Frequency<R>::from_pi_multiple(R(1))};
  auto spec = log_abs_zeta_vertical(b, w, 200, kPrec);
  EXPECT_FALSE(spec.singular_points.empty());
  auto res = integrate(spec, R(200), kPrec);
  const R ref("0.08346229122167157875281209580070247");
  EXPECT_LT(abs(res.value - ref), R("5e-32"));
  EXPECT_LT(res.total_error(), R("1e-35"));
}

TEST(Integrate, RejectsBadInput) {
  auto spec = custom([](const R&) { return R(1); }, WeightKind::SECH, R(1));
  EXPECT_THROW(integrate(spec, R(0), kPrec), Error);
  spec.weight.a = Frequency<R>::from_pi_multiple(R(-1));
  EXPECT_THROW(integrate(spec, R(10), kPrec), Error);
  spec.weight.kind = WeightKind::UNIT;
  spec.weight.a = Frequency<R>::from_pi_multiple(R(1));
  EXPECT_THROW(integrate(spec, R(10), kPrec), Error);
}

TEST(Integrate, LogSingularityAgreesWithSplit) {
  // int_0^oo ln|x - c| e^{-x} dx = ln c - e^{-c} Ei(c)
  const R c("1.3");
  auto f = [c](const R& x) { return log(abs(x - c)); };
  auto spec = custom(f, WeightKind::EXP_DECAY, R(1) / pi<R>());
  spec.singular_points = {c};
  auto whole = integrate(spec, R(500), kPrec);
  R exact = log(c) - exp(-c) * boost::math::expint(c);
  EXPECT_LE(abs(whole.value - exact), whole.total_error() + eps_target<R>(kPrec));

  auto g = [c](const R& x) { return exp(-x) * log(abs(x - c)); };
  auto left = integrate_interval<R>(g, R(0), c, kPrec, false, true);
  auto right = integrate_interval<R>(g, c, whole.cutoff, kPrec, true, false);
  R split = left.value + right.value;
  R budget = whole.total_error() + left.total_error() + right.total_error() + eps_target<R>(kPrec);
  EXPECT_LE(abs(whole.value - split), budget);
}

TEST(Integrate, LogAtBothEndpoints) {
  // int_0^1 ln|x - 1/2| dx = -1 - ln 2
  auto f = [](const R& x) { return log(abs(x - R(1) / 2)); };
  auto lo = integrate_interval<R>(f, R(0), R(1) / 2, kPrec, false, true);
  auto hi = integrate_interval<R>(f, R(1) / 2, R(1), kPrec, true, false);
  EXPECT_LT(abs(lo.value + hi.value + 1 + ln2<R>()), eps_target<R>(kPrec));
}

TEST(Integrate, DoublingTMaxStaysWithinTail) {
  for (const char* bs : {"2", "0.75", "0"}) {
    const R b(bs);
    Weight<R> w{WeightKind::EXP_DECAY, Frequency<R>::from_pi_multiple(R(1) / 4)};
    auto s1 = log_abs_zeta_vertical(b, w, 12, kPrec);
    auto s2 = log_abs_zeta_vertical(b, w, 24, kPrec);
    auto r1 = integrate(s1, R(12), kPrec);
    auto r2 = integrate(s2, R(24), kPrec);
    ASSERT_EQ(r1.cutoff, 12);
    EXPECT_GT(r1.truncation_bound, eps_target<R>(kPrec));
    EXPECT_LT(abs(r2.value - r1.value), r1.truncation_bound) << b;
  }
}

TEST(Integrate, SamplesAreRecorded) {
  Weight<R> w{WeightKind::SECH, Frequency<R>::from_pi_multiple(R(1))};
  auto spec = log_abs_zeta_vertical(R(2), w, 60, kPrec);
  QuadOptions opts;
  opts.record_samples = true;
  auto res = integrate(spec, R(60), kPrec, opts);
  ASSERT_FALSE(res.samples.empty());
  EXPECT_EQ(static_cast<long>(res.samples.size()), res.evaluations);
  const auto& s = res.samples.front();
  EXPECT_LT(abs(s.integrand - w(s.t) * s.kernel), R("1e-60"));
}

TEST(TailBound, SechPiAt200) {
  auto spec = custom([](const R&) { return R(0); }, WeightKind::SECH, R(1));
  R bound = tail_bound(spec, R(200), kPrec);
  R oracle = 2 * envelope_tail(5, 2, pi<R>(), R(200));
  EXPECT_LT(bound, R("1e-270"));
  EXPECT_GE(bound, oracle);
  EXPECT_LT(bound, 2 * oracle);
}

TEST(TailBound, ExpDecayTwoPiAt50) {
  auto spec = custom([](const R&) { return R(0); }, WeightKind::EXP_DECAY, R(2));
  R bound = tail_bound(spec, R(50), kPrec);
  R oracle = envelope_tail(5, 2, 2 * pi<R>(), R(50));
  EXPECT_LT(bound, R("1e-130"));
  EXPECT_GE(bound, oracle);
  EXPECT_LT(bound, 2 * oracle);
}

TEST(TailBound, MonotoneInT) {
  for (WeightKind k : {WeightKind::EXP_DECAY, WeightKind::SECH, WeightKind::SECH_SQ_TIMES_T}) {
    auto spec = custom([](const R&) { return R(0); }, k, R("0.3"));
    spec.envelope = {10, 2, 1};
    R prev = tail_bound(spec, R(10), kPrec);
    for (int t = 20; t <= 400; t += 10) {
      R cur = tail_bound(spec, R(t), kPrec);
      EXPECT_LT(cur, prev) << t;
      prev = cur;
    }
    EXPECT_LT(prev, R("1e-100"));
  }
}

TEST(TailBound, BoundsTheActualTail) {
  // ln|zeta(2 + it)| e^{-t/2} beyond T = 10
  Weight<R> w{WeightKind::EXP_DECAY, Frequency<R>::from_pi_multiple(R(1) / (2 * pi<R>()))};
  auto spec = log_abs_zeta_vertical(R(2), w, 200, kPrec);
  auto g = [&](const R& t) { return spec(t, kPrec); };
  R actual = integrate_interval<R>(g, R(10), R(200), kPrec).value;
  EXPECT_LT(abs(actual), tail_bound(spec, R(10), kPrec));
}

TEST(TailBound, RejectsShortRangeAndOscillatoryWeights) {
  auto spec = custom([](const R&) { return R(0); }, WeightKind::SECH, R(1));
  EXPECT_THROW(tail_bound(spec, R(5), kPrec), Error);
  spec.weight.kind = WeightKind::COS;
  try {
    tail_bound(spec, R(50), kPrec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnboundedTail);
  }
}

TEST(Envelope, HoldsOnSampledHeights) {
  using R40 = Real40;
  const auto prec = PrecisionSpec::with_working(30);
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (const char* bs : {"2", "1.5", "1", "0.75", "0.5", "0", "-0.5", "-3.5"}) {
    const R40 b(bs);
    Envelope e = log_abs_zeta_envelope(b, prec);
    for (int i = 0; i < 12; ++i) {
      double t = std::pow(10.0, u(rng));
      double lz = to_double(log_abs_zeta(b, R40(t), prec));
      double env = (e.c1 + e.c2 * std::log(2 + t)) * std::pow(1 + t, e.p);
      // Near zeros on the line ln|zeta| dips without bound; the envelope is
      // an upper bound there and a two-sided bound elsewhere.
      if (b == R40(1) / 2)
        EXPECT_LE(lz, env) << "b = " << bs << ", t = " << t;
      else
        EXPECT_LE(std::fabs(lz), env) << "b = " << bs << ", t = " << t;
    }
  }
}

TEST(GaussLegendre, ExactOnPolynomialsUpToDegree2nMinus1) {
  for (int n : {8, 13, 35}) {
    const auto& rule = gauss_legendre<R>(n);
    EXPECT_EQ(rule.order, n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      R q = gauss_legendre_apply(rule, R(0), R(1), [k](const R& x) { return pow(x, k); });
      EXPECT_LT(abs(q - R(1) / (k + 1)), R("1e-60")) << "n = " << n << ", k = " << k;
    }
    R q = gauss_legendre_apply(rule, R(0), R(1), [n](const R& x) { return pow(x, 2 * n); });
    EXPECT_GT(abs(q - R(1) / (2 * n + 1)), R("1e-60"));
  }
}

TEST(GaussLegendre, RefinementHalvesTheError) {
  const auto& rule = gauss_legendre<R>(6);
  auto f = [](const R& x) { return exp(x) * cos(3 * x); };
  // antiderivative e^x (cos 3x + 3 sin 3x) / 10
  auto F = [](const R& x) { return exp(x) * (cos(3 * x) + 3 * sin(3 * x)) / 10; };
  const R lo(0), hi(4), exact = F(hi) - F(lo);
  R prev = abs(gauss_legendre_apply(rule, lo, hi, f) - exact);
  for (int level = 1; level <= 6; ++level) {
    int panels = 1 << level;
    R h = (hi - lo) / panels, sum(0);
    for (int i = 0; i < panels; ++i) sum += gauss_legendre_apply(rule, lo + i * h, lo + (i + 1) * h, f);
    R err = abs(sum - exact);
    EXPECT_LE(2 * err, prev) << level;
    prev = err;
  }
}

TEST(Oscillatory, FullPeriodsOfSineVanish) {
  auto f = [](const R& x) { return boost::math::sin_pi(2 * x); };
  for (int X : {1, 3, 7}) {
    auto res = integrate_interval<R>(f, R(0), R(X), kPrec);
    EXPECT_LT(abs(res.value), eps_target<R>(kPrec)) << X;
  }
}

TEST(Oscillatory, PoleAtCosineNode) {
  // b = 1/2, cos(pi x): the pole of zeta(1/2 + x) sits on the node x = 1/2.
  const R b = R(1) / 2;
  Weight<R> w{WeightKind::COS, Frequency<R>::from_pi_multiple(R(1))};
  auto spec = log_abs_zeta_real_axis(b, w);
  ASSERT_EQ(spec.singular_points.size(), 1u);
  EXPECT_EQ(spec.singular_points[0], b);
  auto res = integrate_real_axis_oscillatory(spec, R(200), kPrec);
  EXPECT_LT(res.cutoff, 200);
  EXPECT_LT(res.total_error(), R("1e-38"));

  // Independent evaluation with the Boost zeta on [0, 1/2], [1/2, 1], [1, cutoff].
  auto g = [&](const R& x) {
    return boost::math::cos_pi(x) * log(abs(boost::math::zeta(R(b + x))));
  };
  R ref = integrate_interval<R>(g, R(0), b, kPrec, false, true).value +
          integrate_interval<R>(g, b, R(1), kPrec, true, false).value;
  for (long k = 1; k < to_double(res.cutoff); ++k)
    ref += integrate_interval<R>(g, R(k), R(k + 1), kPrec).value;
  EXPECT_LT(abs(res.value - ref), R("1e-35"));
}

TEST(Oscillatory, FarLeftOfTheStrip) {
  // b = -7/2: the pole at x = 9/2 and the trivial zero at x = 3/2.
  const R b("-3.5");
  Weight<R> w{WeightKind::SIN, Frequency<R>::from_pi_multiple(R(1))};
  auto spec = log_abs_zeta_real_axis(b, w);
  ASSERT_EQ(spec.singular_points.size(), 2u);
  EXPECT_EQ(spec.singular_points[0], R("1.5"));
  EXPECT_EQ(spec.singular_points[1], R("4.5"));
  auto r250 = integrate_real_axis_oscillatory(spec, R(250), kPrec);
  auto r500 = integrate_real_axis_oscillatory(spec, R(500), kPrec);
  EXPECT_LE(r250.cutoff, 250);
  EXPECT_LT(abs(r250.value - r500.value), r250.total_error() + r500.total_error());
}

TEST(Oscillatory, SnapsToWholePeriods) {
  Weight<R> w{WeightKind::SIN, Frequency<R>::from_pi_multiple(R("0.3"))};
  auto spec = log_abs_zeta_real_axis(R(2), w);
  // Three whole periods fit below 22; the tail there is still far above tolerance.
  auto res = integrate_real_axis_oscillatory(spec, R(22), kPrec);
  const R period = R(2) / R("0.3");
  EXPECT_LT(abs(res.cutoff - 3 * period), R("1e-60"));
}

TEST(Oscillatory, RejectsShortRangeAndDecayingWeights) {
  Weight<R> w{WeightKind::SIN, Frequency<R>::from_pi_multiple(R(1))};
  auto spec = log_abs_zeta_real_axis(R(2), w);
  EXPECT_THROW(integrate_real_axis_oscillatory(spec, R("1.5"), kPrec), Error);
  spec.weight.kind = WeightKind::SECH;
  EXPECT_THROW(integrate_real_axis_oscillatory(spec, R(50), kPrec), Error);
}
