#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "rhv/zero_bound.hpp"
#include "rhv/zeros.hpp"

using namespace rhv;
using R = Real70;

namespace {

const PrecisionSpec kPrec = PrecisionSpec::with_working(50);

BoundParams<R> params(const R& a, const char* T = "3.3e9") {
  BoundParams<R> p;
  p.a = a;
  p.T = R(T);
  return p;
}

// True if x agrees with ref to n significant figures.
bool agrees_to(double x, double ref, int n) { return std::fabs(x - ref) < 5 * std::pow(10.0, -n) * std::fabs(ref); }

}  // namespace

TEST(CountingMainTerm, ValuesAndDomain) {
  const R t = 2 * pi<R>() * exp(R(1));
  EXPECT_LT(abs(counting_main_term(t) - R(7) / 8), R("1e-60"));
  // (100/2pi)(ln(100/2pi) - 1) + 7/8
  double u = 100 / (2 * M_PI);
  EXPECT_NEAR(to_double(counting_main_term(R(100))), u * (std::log(u) - 1) + 0.875, 1e-12);
  EXPECT_NEAR(to_double(counting_main_term(R(100))), 29.0, 0.01);
  EXPECT_THROW(counting_main_term(R(6)), Error);
}

TEST(CountingMainTerm, Increasing) {
  R prev = counting_main_term(R(18));
  for (int t = 19; t <= 2000; t += 7) {
    R cur = counting_main_term(R(t));
    EXPECT_GT(cur, prev) << t;
    prev = cur;
  }
}

TEST(BacklundQ, Values) {
  double lt = std::log(3.3e9);
  EXPECT_NEAR(to_double(backlund_Q_bound(R("3.3e9"))), 0.137 * lt + 0.443 * std::log(lt) + 4.35, 1e-12);
  EXPECT_NEAR(to_double(backlund_Q_bound(R("3.3e9"))), 8.72, 0.01);
  R e2 = exp(R(2));
  EXPECT_LT(abs(backlund_Q_bound(e2) - (R("0.274") + R("0.443") * log(R(2)) + R("4.350"))), R("1e-60"));
  EXPECT_THROW(backlund_Q_bound(R(2)), Error);
  R prev = backlund_Q_bound(R(3));
  for (double t = 4; t < 1e12; t *= 1.7) {
    R cur = backlund_Q_bound(R(t));
    EXPECT_GT(cur, prev) << t;
    prev = cur;
  }
}

TEST(BacklundQ, BracketsTheZeroCount) {
  // Published counts N(50) = 10, N(100) = 29, N(500) = 269.
  const std::pair<int, long> known[] = {{50, 10}, {100, 29}, {500, 269}};
  for (auto [t, n] : known) {
    R main = counting_main_term(R(t));
    R q = backlund_Q_bound(R(t));
    EXPECT_LE(R(n), main + q) << t;
    EXPECT_GE(R(n), main - q) << t;
  }
  EXPECT_EQ(zero_count(R(50), kPrec), 10);
  EXPECT_EQ(zero_count(R(100), kPrec), 29);
  EXPECT_EQ(zero_count(R(500), kPrec), 269);
}

TEST(ZeroCountHeight, ValuesAndMonotone) {
  R t = T_from_zero_count(R(1000));
  EXPECT_LT(abs(t - 2 * pi<R>() * 1000 / log(R(1000))), R("1e-60"));
  EXPECT_NEAR(to_double(T_from_zero_count(R("1e13"))), 2.1e12, 0.01e12);
  R prev = t;
  for (double k = 2000; k < 1e15; k *= 3) {
    R cur = T_from_zero_count(R(k));
    EXPECT_GT(cur, prev);
    prev = cur;
  }
  EXPECT_THROW(T_from_zero_count(R(999)), Error);
}

TEST(BoundI, HeadlineBounds) {
  auto r1 = bound_I(params(R(1)), BoundFamily::REAL_PART);
  EXPECT_TRUE(agrees_to(to_double(r1.prefactor_c), 34.1, 2));
  EXPECT_TRUE(agrees_to(to_double(r1.log10_bound), -1.433e9, 3));

  auto r2 = bound_I(params(2 * pi<R>()), BoundFamily::REAL_PART);
  EXPECT_TRUE(agrees_to(to_double(r2.prefactor_c), 0.101, 2));
  // e^{-2.074e10}
  EXPECT_TRUE(agrees_to(to_double(r2.log10_bound), -2.074e10 / std::log(10.0), 3));

  auto r4 = bound_I(params(4 * pi<R>()), BoundFamily::IMAG_PART);
  EXPECT_TRUE(agrees_to(to_double(r4.prefactor_c), 0.025, 1));
  EXPECT_TRUE(agrees_to(to_double(r4.log10_bound), -4.14e10 / std::log(10.0), 3));
}

TEST(BoundI, ClosedFormByHand) {
  const double a = 1.5, T = 1e6;
  const double lt = std::log(T);
  double inner = 0.861 * lt + lt / a + 27.332 + 2.784 / (a * lt * lt) + 0.861 / (a * T) + 1 / (a * a * a * T);
  double c = inner / (2 * a * a * a);
  auto r = bound_I(params(R(a), "1e6"), BoundFamily::REAL_PART);
  EXPECT_NEAR(to_double(r.prefactor_c), c, 1e-12 * c);
  EXPECT_NEAR(to_double(r.log10_bound), std::log10(c) - a * T / std::log(10.0), 1e-6);
}

TEST(BoundI, ImagIsTwiceReal) {
  for (const char* a : {"0.1", "1", "6.283", "12.5"})
    for (const char* T : {"1e3", "3.3e9", "1e20"}) {
      auto re = bound_I(params(R(a), T), BoundFamily::REAL_PART);
      auto im = bound_I(params(R(a), T), BoundFamily::IMAG_PART);
      EXPECT_EQ(im.prefactor_c, 2 * re.prefactor_c) << a << " " << T;
    }
}

TEST(BoundI, DecreasingInAAndT) {
  R prev = bound_I(params(R("0.5")), BoundFamily::REAL_PART).log10_bound;
  for (double a = 0.75; a < 20; a += 0.25) {
    R cur = bound_I(params(R(a)), BoundFamily::REAL_PART).log10_bound;
    EXPECT_LT(cur, prev) << a;
    prev = cur;
  }
  prev = bound_I(params(R(1), "1e3"), BoundFamily::IMAG_PART).log10_bound;
  for (double T = 2e3; T < 1e15; T *= 2.5) {
    R cur = bound_I(params(R(1), std::to_string(T).c_str()), BoundFamily::IMAG_PART).log10_bound;
    EXPECT_LT(cur, prev) << T;
    prev = cur;
  }
}

TEST(BoundI, FromZeroCount) {
  BoundParams<R> p;
  p.k = R("1e13");
  auto r = bound_I(p, BoundFamily::REAL_PART);
  EXPECT_EQ(r.T, T_from_zero_count(R("1e13")));
  EXPECT_LT(r.log10_bound, R("-9e11"));
}

TEST(BoundI, Validation) {
  EXPECT_THROW(bound_I(params(R(0)), BoundFamily::REAL_PART), Error);
  EXPECT_THROW(bound_I(params(R(1), "100"), BoundFamily::REAL_PART), Error);
  BoundParams<R> p;
  p.k = R(10);
  EXPECT_THROW(bound_I(p, BoundFamily::REAL_PART), Error);
}

TEST(Coefficients, MatchTheirDerivation) {
  auto d = derived_bound_coefficients<R>();
  EXPECT_NEAR(d.c_log, 2 * M_PI * 0.137, 1e-12);
  EXPECT_NEAR(d.c_const, 2 * M_PI * 4.35, 1e-12);
  EXPECT_NEAR(d.c_loglog, 2 * M_PI * 0.443, 1e-12);
  EXPECT_LE(coefficient_drift<R>(), 1e-3);
  EXPECT_NO_THROW(verify_bound_coefficients<R>());
  BoundCoefficients typo;
  typo.c_const = 27.323;
  EXPECT_GT(coefficient_drift<R>(typo), 1e-3);
  EXPECT_THROW(bound_I(params(R(1)), BoundFamily::REAL_PART, {}, typo), Error);
}

TEST(BoundJson, Fields) {
  auto r = bound_I(params(2 * pi<R>()), BoundFamily::IMAG_PART);
  auto j = to_json(r, 2 * pi<R>());
  EXPECT_EQ(j["family"], "IMAG_PART");
  for (const char* k : {"a", "T", "prefactor_c", "log10_bound"}) ASSERT_TRUE(j[k].is_string()) << k;
  EXPECT_NEAR(std::stod(j["prefactor_c"].get<std::string>()), to_double(r.prefactor_c), 1e-15);
  EXPECT_NEAR(std::stod(j["T"].get<std::string>()), 3.3e9, 1e-3);
}
