#include <gtest/gtest.h>

#include <boost/math/special_functions/zeta.hpp>

#include <random>

#include "rhv/series.hpp"

using namespace rhv;
using R = Real70;

namespace {

const PrecisionSpec kPrec = PrecisionSpec::with_working(50);

R bz(const R& x) { return boost::math::zeta(x); }

// zeta'/zeta from a centred difference of the Boost zeta at 130 digits.
R boost_log_deriv(const R& x) {
  using R2 = Real130;
  const R2 h("1e-40");
  R2 xx(x);
  R2 d = (boost::math::zeta(R2(xx + h)) - boost::math::zeta(R2(xx - h))) / (2 * h);
  return R(d / boost::math::zeta(xx));
}

R boost_g_term(const R& x) { return log(bz(1 + x)) + (x + R(1) / 2) * boost_log_deriv(1 + x); }

Frequency<R> freq(const char* over_pi) { return Frequency<R>::from_pi_multiple(R(over_pi)); }

}  // namespace

TEST(Alternating, CriticalLineLimitGivesTheSechIntegral) {
  auto s = alternating_log_zeta_integers<R>(120, kPrec);
  R rhs = log(pi<R>() / 2) + s.value;
  EXPECT_LT(abs(rhs - R("0.08346229122167157875281209580070247")), R("5e-32"));
  EXPECT_LT(s.tail_bound, R("1e-35"));
}

TEST(Alternating, BruteForceAtBTwoAOne) {
  const R b(2);
  const auto a = Frequency<R>::from_value(R(1));
  auto ours = alternating_log_zeta_sum(b, a, 60, kPrec);
  // Terms fall like 2^{-x_n}, x_n = 2 + pi/2 + pi n; 5000 terms is far past
  // the 50-digit floor.
  R ref(0);
  for (int n = 0; n < 5000; ++n) {
    R x = b + pi<R>() / 2 + pi<R>() * n;
    if (x > 200) break;
    R t = log(bz(x));
    ref += n % 2 == 0 ? t : R(-t);
  }
  EXPECT_LT(abs(ours.value - ref), eps_target<R>(kPrec));
  EXPECT_LT(ours.tail_bound, eps_target<R>(kPrec));
}

TEST(Alternating, FarRightIsTiny) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ub(40.0, 60.0), ua(0.2, 3.0);
  for (int i = 0; i < 10; ++i) {
    R b(ub(rng));
    auto a = Frequency<R>::from_pi_multiple(R(ua(rng)));
    auto s = alternating_log_zeta_sum(b, a, 10, kPrec);
    EXPECT_LE(abs(s.value), pow(R(2), -39));
  }
}

TEST(Alternating, BracketedByConsecutivePartialSums) {
  const R b("0.75");
  const auto a = freq("0.8");
  auto full = alternating_log_zeta_sum(b, a, 200, kPrec);
  for (int n = 13; n <= 30; ++n) {
    auto lo = alternating_log_zeta_sum(b, a, n, kPrec);
    auto hi = alternating_log_zeta_sum(b, a, n + 1, kPrec);
    R mn = lo.value < hi.value ? lo.value : hi.value;
    R mx = lo.value < hi.value ? hi.value : lo.value;
    EXPECT_GE(full.value, mn) << n;
    EXPECT_LE(full.value, mx) << n;
  }
}

TEST(Alternating, Errors) {
  EXPECT_THROW(alternating_log_zeta_sum(R("0.5"), freq("1"), 20, kPrec), Error);
  EXPECT_THROW(alternating_log_zeta_sum(R(2), freq("1"), 5, kPrec), Error);
  EXPECT_THROW(alternating_log_zeta_integers<R>(3, kPrec), Error);
}

TEST(Zagier, ConstantAndProduct) {
  auto s = zagier_product_constant<R>(200, kPrec);
  EXPECT_GT(s.value, R("0.8306"));
  EXPECT_LT(s.value, R("0.8307"));
  R c = exp(s.value);
  EXPECT_GT(c, R("2.29485"));
  EXPECT_LT(c, R("2.29486"));
  for (int n : {100, 150, 300}) {
    R cn = exp(zagier_product_constant<R>(n, kPrec).value);
    EXPECT_GE(cn, R("2.294"));
    EXPECT_LE(cn, R("2.295"));
  }
  auto s20 = zagier_product_constant<R>(20, kPrec);
  EXPECT_LT(abs(s.value - s20.value), pow(R(2), -19));
  EXPECT_THROW(zagier_product_constant<R>(10, kPrec), Error);
}

TEST(Zagier, MatchesBoostProduct) {
  R ref(1);
  for (int n = 2; n <= 200; ++n) ref *= bz(R(n));
  EXPECT_LT(abs(exp(zagier_product_constant<R>(200, kPrec).value) - ref), R("1e-45"));
}

TEST(GSum, FirstTermIsTheDefinition) {
  R f1 = g_summand(R(1), kPrec);
  R direct = log(bz(R(2))) + R(3) / 2 * boost_log_deriv(R(2));
  EXPECT_LT(abs(f1 - direct), R("1e-38"));
}

TEST(GSum, MatchesBruteForceOracle) {
  R ref(0);
  for (int n = 1; n <= 50; ++n) ref += boost_g_term(R(n));
  ref /= pi<R>();
  auto ours = theorem1a_g_sum<R>(50, kPrec);
  EXPECT_LT(abs(ours.value - ref), R("1e-38"));
}

TEST(GSum, LongerTruncationWithinTail) {
  auto s50 = theorem1a_g_sum<R>(50, kPrec);
  auto s500 = theorem1a_g_sum<R>(500, kPrec);
  EXPECT_GT(abs(s500.value - s50.value), 0);
  EXPECT_LE(abs(s500.value - s50.value), s50.tail_bound);
  EXPECT_THROW(theorem1a_g_sum<R>(20, kPrec), Error);
}

TEST(GSum, SummandIsAnExactDerivative) {
  // f(x) = d/dx ((x + 1/2) ln zeta(1 + x))
  using R2 = Real130;
  const auto fine = PrecisionSpec::with_working(100);
  const R2 h("1e-30");
  auto F = [&](const R2& x) { return (x + R2(1) / 2) * log(zeta(R2(1 + x), fine)); };
  for (int x = 1; x <= 3; ++x) {
    R2 fd = (F(R2(x) + h) - F(R2(x) - h)) / (2 * h);
    EXPECT_LT(abs(R(fd) - g_summand(R(x), kPrec)), R("1e-45")) << x;
  }
}

TEST(GSum, EnvelopeOfTheLogDerivative) {
  for (int x = 4; x <= 80; ++x) {
    R ld = zeta_log_deriv(R(x), kPrec);
    EXPECT_LE(abs(ld), 2 * ln2<R>() * pow(R(2), -x)) << x;
    EXPECT_LE(abs(log(zeta(R(x), kPrec))), 2 * pow(R(2), -x)) << x;
  }
}

TEST(EulerMaclaurin, EstimateAndGapToTheSum) {
  R em = euler_maclaurin_g_estimate<R>(kPrec);
  // 10 significant figures
  const R pub("-0.2994461350");
  EXPECT_LT(abs(em - pub), R("5e-10") * abs(pub));
  R gap = abs(em - theorem1a_g_sum<R>(50, kPrec).value);
  EXPECT_GT(gap, R("3.1e-4"));
  EXPECT_LT(gap, R("3.3e-4"));
}

TEST(EulerMaclaurin, IntegralOfTheSummand) {
  // int_1^oo f = -(3/2) ln zeta(2), from the antiderivative.
  R ref = -R(3) / 2 * log(bz(R(2)));
  R lim = (R(200) + R(1) / 2) * log(bz(R(201)));
  EXPECT_LT(abs(lim), R("1e-55"));
  EXPECT_LT(abs(ref - (lim - R(3) / 2 * log(zeta(R(2), kPrec)))), R("1e-48"));
}

TEST(LogDerivSum, FirstTermAtBTwoAOne) {
  const R b(2);
  const auto a = Frequency<R>::from_value(R(1));
  R x0 = alternating_abscissa(b, a, 0);
  EXPECT_LT(abs(x0 - (2 + pi<R>() / 2)), R("1e-60"));
  auto s = log_zeta_logderiv_sum(b, a, 40, kPrec);
  R ref(0);
  for (int n = 0; n <= 40; ++n) {
    R x = alternating_abscissa(b, a, n);
    ref += log(bz(x)) + (x - b) * boost_log_deriv(x);
  }
  EXPECT_LT(abs(s.value - ref), R("1e-38"));
}

TEST(LogDerivSum, DoublingWithinTail) {
  for (const char* bs : {"0.5", "0.9", "1.5"}) {
    const R b(bs);
    const auto a = freq("0.7");
    auto s1 = log_zeta_logderiv_sum(b, a, 15, kPrec);
    auto s2 = log_zeta_logderiv_sum(b, a, 30, kPrec);
    auto s4 = log_zeta_logderiv_sum(b, a, 60, kPrec);
    EXPECT_LE(abs(s2.value - s1.value), s1.tail_bound) << bs;
    EXPECT_LE(abs(s4.value - s1.value), s1.tail_bound) << bs;
  }
}

TEST(LogDerivSum, Errors) {
  EXPECT_THROW(log_zeta_logderiv_sum(R("0.5"), freq("1"), 40, kPrec), Error);
  EXPECT_THROW(log_zeta_logderiv_sum(R("0.9"), freq("0.7"), 0, kPrec), Error);
}

TEST(TailHonesty, QuadruplingStaysInsideTheBound) {
  const R b("0.6");
  const auto a = freq("0.9");
  for (int n : {10, 14, 20}) {
    auto s = alternating_log_zeta_sum(b, a, n, kPrec);
    auto s4 = alternating_log_zeta_sum(b, a, 4 * n, kPrec);
    EXPECT_LE(abs(s4.value - s.value), s.tail_bound) << n;
    auto i = alternating_log_zeta_integers<R>(n, kPrec);
    auto i4 = alternating_log_zeta_integers<R>(4 * n, kPrec);
    EXPECT_LE(abs(i4.value - i.value), i.tail_bound) << n;
    auto z = zagier_product_constant<R>(2 * n, kPrec);
    auto z4 = zagier_product_constant<R>(8 * n, kPrec);
    EXPECT_LE(abs(z4.value - z.value), z.tail_bound) << n;
  }
  for (int n : {50, 70}) {
    auto g = theorem1a_g_sum<R>(n, kPrec);
    auto g4 = theorem1a_g_sum<R>(4 * n, kPrec);
    EXPECT_LE(abs(g4.value - g.value), g.tail_bound) << n;
  }
}
