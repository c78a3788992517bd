// Acceptance runner: evaluates each numbered criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion.
//
//   acceptance            all criteria
//   acceptance --only 4   one criterion
//   acceptance --long     adds the full-precision Eq. 4 reproduction (hours)
//
// Exit status is 0 when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rhv/cli/runner.hpp"
#include "rhv/criteria.hpp"
#include "rhv/series.hpp"
#include "rhv/zero_bound.hpp"

using namespace rhv;

namespace {

using R50 = Real70;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [fail]");
  }
};

// x agrees with ref to n significant figures: |x - ref| < 5 10^{-n} |ref|.
template <class Real>
bool agrees_to(const Real& x, const Real& ref, int n) {
  using std::abs;
  return abs(x - ref) < 5 * pow10_neg<Real>(n) * abs(ref);
}

template <class Real>
std::string sci(const Real& x, int d = 6) {
  return to_decimal(x, d);
}

PrecisionSpec p50() { return PrecisionSpec::with_working(50); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict criterion1() {
  Verdict v;
  const auto prec = p50();
  auto p = EqualityParams<R50>::defaults(CaseId::EQ4, prec);
  p.t_max = 60;
  p.n_max = 300;
  auto t0 = std::chrono::steady_clock::now();
  auto r = check(p, prec);
  double secs = seconds_since(t0);
  using std::abs;
  v.require(abs(r.residual) < R50("1e-30"), "EQ4 residual " + sci(r.residual) + " < 1e-30");
  v.require(secs < 1800, "runtime " + std::to_string(secs) + " s < 1800 s");
  return v;
}

// Full-precision Eq. 4 run, compared with the published residual.
Verdict criterion1_long() {
  Verdict v;
  using R = Real230;
  const auto prec = PrecisionSpec::with_working(200);
  auto p = EqualityParams<R>::defaults(CaseId::EQ4, prec);
  p.t_max = 200;
  p.n_max = 1000;
  auto r = check(p, prec);
  using std::abs;
  v.require(agrees_to(R(abs(r.residual)), R("1.162608547e-81"), 9),
            "EQ4 residual " + sci(r.residual, 10) + " vs published 1.162608547e-81 to 9 digits");
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto prec = p50();
  quad::Weight<R50> w;
  w.kind = quad::WeightKind::SECH;
  w.a = Frequency<R50>::from_pi_multiple(R50(1));
  auto spec = quad::log_abs_zeta_vertical(R50(1) / 2, w, 201.0, prec);
  auto q = quad::integrate(spec, R50(200), prec);
  const R50 golden("0.08346229122167157875281209580070247");
  v.require(agrees_to(q.value, golden, 30),
            "int_0^200 ln|zeta(1/2+it)| sech(pi t) = " + sci(q.value, 36) + " matches to 30 digits");
  return v;
}

Verdict criterion3() {
  Verdict v;
  const auto prec = p50();
  using std::abs;
  for (auto [c, published] : {std::pair{CaseId::EQ6A, "8.8044282e-32"}, {CaseId::EQ7A, "1.14767406e-31"}}) {
    auto r = check(EqualityParams<R50>::defaults(c, prec), prec);
    std::string name(to_string(c));
    v.require(abs(r.residual) < R50("1e-25"), name + " residual " + sci(r.residual) + " < 1e-25");
    v.require(agrees_to(R50(abs(r.residual)), R50(published), 6),
              name + " residual reproduces published " + published + " to 6 digits");
  }
  return v;
}

Verdict criterion4() {
  Verdict v;
  const auto prec = p50();
  using std::abs;
  auto r = check(EqualityParams<R50>::defaults(CaseId::EQ8, prec), prec);
  v.require(abs(r.residual) < R50("1e-25"), "EQ8 residual " + sci(r.residual) + " < 1e-25");
  const R50 eps = eps_working<R50>(prec);
  const auto* pole = r.find("rhs.pole");
  const auto* triv = r.find("rhs.trivial_zeros");
  v.require(pole && abs(pole->value - 1) <= eps, "pole component " + (pole ? sci(pole->value, 12) : "missing") + " = +1");
  v.require(triv && abs(triv->value + 1) <= eps,
            "trivial-zero component " + (triv ? sci(triv->value, 12) : "missing") + " = -1");
  return v;
}

Verdict criterion5() {
  Verdict v;
  const auto prec = p50();
  using std::exp;
  auto z = zagier_product_constant<R50>(1000, prec);
  R50 ez = exp(z.value);
  v.require(z.value >= R50("0.8306") && z.value <= R50("0.8307"),
            "sum ln zeta(n) = " + sci(z.value, 10) + " in [0.8306, 0.8307]");
  v.require(ez >= R50("2.29485") && ez <= R50("2.29486"), "product = " + sci(ez, 10) + " in [2.29485, 2.29486]");
  auto g = theorem1a_g_sum<R50>(50, prec);
  v.require(agrees_to(g.value, R50("-0.2991293527"), 10),
            "g sum(50) = " + sci(g.value, 14) + " vs -0.2991293527 to 10 digits");
  R50 em = euler_maclaurin_g_estimate<R50>(prec);
  v.require(agrees_to(em, R50("-0.2994461350"), 10),
            "Euler-Maclaurin estimate = " + sci(em, 14) + " vs -0.2994461350 to 10 digits");
  return v;
}

Verdict criterion6() {
  Verdict v;
  using R = Real40;
  using std::exp;
  using std::log10;
  const R log10e = log10(exp(R(1)));
  struct Headline {
    R a;
    BoundFamily family;
    const char* prefactor;
    R log10_exponent;
    const char* what;
  };
  const std::vector<Headline> rows{
      {R(1), BoundFamily::REAL_PART, "34.1", R("-1.433e9"), "a = 1"},
      {2 * pi<R>(), BoundFamily::REAL_PART, "0.101", R(R("-2.074e10") * log10e), "a = 2 pi"},
      {4 * pi<R>(), BoundFamily::IMAG_PART, "0.025", R(R("-4.14e10") * log10e), "a = 4 pi, imaginary family"},
  };
  for (const auto& h : rows) {
    BoundParams<R> p;
    p.a = h.a;
    auto r = bound_I(p, h.family);
    v.require(agrees_to(r.prefactor_c, R(h.prefactor), 2),
              std::string(h.what) + ": prefactor " + sci(r.prefactor_c, 4) + " vs " + h.prefactor);
    v.require(agrees_to(r.log10_bound, h.log10_exponent, 3),
              std::string(h.what) + ": log10 bound " + sci(r.log10_bound, 4) + " vs " + sci(h.log10_exponent, 4));
  }
  BoundParams<R> p;
  p.k = R("1e13");
  auto r = bound_I(p, BoundFamily::REAL_PART);
  v.require(agrees_to(r.log10_bound, R("-1.318e13"), 3),
            "k = 1e13, a = 1: T = " + sci(r.T, 4) + ", log10 bound " + sci(r.log10_bound, 4) + " vs -1.318e13");
  return v;
}

Verdict criterion7() {
  Verdict v;
  using std::abs;
  const auto prec = p50();
  std::mt19937_64 rng(20240607);

  // EQ2 at random (a, b), b >= 1.
  std::uniform_real_distribution<double> ua(0.5, 3.0), ub(1.0, 3.0);
  int eq2_ok = 0;
  for (int i = 0; i < 5; ++i) {
    auto p = EqualityParams<R50>::defaults(CaseId::EQ2, prec);
    p.a = Frequency<R50>::from_value(R50(ua(rng)));
    p.b = R50(ub(rng));
    p.t_max = EqualityParams<R50>::auto_t_max(CaseId::EQ2, p.a, prec);
    if (check(p, prec).within_budget()) ++eq2_ok;
  }
  v.require(eq2_ok == 5, "EQ2 random (a, b): " + std::to_string(eq2_ok) + "/5 within budget");

  // EQ10_UNCONDITIONAL on b in {0, -1, -2}, a = pi n/(1/2 - b).
  int eq10_ok = 0;
  for (int b : {0, -1, -2})
    for (int n : {1, 2}) {
      auto p = EqualityParams<R50>::defaults(CaseId::EQ10_UNCONDITIONAL, prec);
      p.b = R50(b);
      p.a = Frequency<R50>::from_pi_multiple(R50(R50(n) / (R50(1) / 2 - p.b)));
      p.t_max = EqualityParams<R50>::auto_t_max(p.case_id, p.a, prec);
      if (check(p, prec).within_budget()) ++eq10_ok;
    }
  v.require(eq10_ok == 6, "EQ10 unconditional: " + std::to_string(eq10_ok) + "/6 within budget");

  // Functional equation against the direct sum at random points.
  std::uniform_real_distribution<double> us(-3.0, 4.0), ut(0.5, 60.0);
  R50 worst(0);
  for (int i = 0; i < 50; ++i) {
    ComplexPoint<R50> s(R50(us(rng)), R50(ut(rng)));
    auto z = zeta(s, prec);
    auto f = functional_equation_rhs(s, prec);
    R50 scale = abs(z);
    if (scale < 1) scale = 1;
    R50 d = abs(ComplexPoint<R50>(z.re - f.re, z.im - f.im)) / scale;
    if (d > worst) worst = d;
  }
  v.require(worst < eps_target<R50>(prec), "functional equation worst residual " + sci(worst, 3));

  // Positivity of the cosh-weighted zero term.
  int negatives = 0, evaluated = 0;
  const R50 b = R50(1) / 2;
  for (double a : {0.25, 1.0, 3.0})
    for (double t : {1.0, 10.0, 100.0, 1e3, 1e6})
      for (int k = 1; k <= 9; ++k) {
        ZeroSpec<R50> zs{R50(b + R50(k) / 20), R50(t), 1};
        R50 c = zero_contribution_cosh(zs, Frequency<R50>::from_value(R50(a)), b, prec);
        ++evaluated;
        if (!(c > 0)) ++negatives;
      }
  v.require(negatives == 0,
            "cosh zero term positive at " + std::to_string(evaluated - negatives) + "/" + std::to_string(evaluated) + " points");

  // Critical-line zeros drop out of the exponential family.
  bool exact = true;
  for (int n = 1; n <= 5; ++n)
    for (double t : {14.134725, 100.0, 1e4}) {
      ZeroSpec<R50> zs{R50(1) / 2, R50(t), 1};
      auto c = zero_contribution_exp(zs, Frequency<R50>::from_pi_multiple(R50(4 * n)), R50(0));
      if (c.re != 0 || c.im != 0) exact = false;
    }
  R50 pair_worst(0);
  for (int n = 1; n <= 3; ++n)
    for (double alpha : {0.05, 0.2, 0.45}) {
      const R50 bb(-1);
      auto a = Frequency<R50>::from_pi_multiple(R50(R50(n) / (R50(1) / 2 - bb)));
      ZeroSpec<R50> up{R50(R50(1) / 2 + R50(alpha)), R50(20), 1}, down{R50(R50(1) / 2 - R50(alpha)), R50(20), 1};
      R50 sum = zero_contribution_exp(up, a, bb).re + zero_contribution_exp(down, a, bb).re;
      R50 scale = abs(zero_contribution_exp(up, a, bb).re) + 1e-300;
      if (abs(sum) / scale > pair_worst) pair_worst = abs(sum) / scale;
    }
  v.require(exact && pair_worst <= eps_working<R50>(prec) * 100,
            "critical-line exp term exactly 0, symmetric pair cancels to " + sci(pair_worst, 3));

  // EQ3 at a = pi - 10^-k approaches EQ4 monotonically.
  const auto prec30 = PrecisionSpec::with_working(30);
  using R30 = Real40;
  auto p4 = EqualityParams<R30>::defaults(CaseId::EQ4, prec30);
  p4.t_max = EqualityParams<R30>::auto_t_max(CaseId::EQ4, p4.a, prec30);
  auto r4 = check(p4, prec30);
  R30 prev(-1);
  bool monotone = true, budget_ok = r4.within_budget();
  std::string dists;
  for (int k = 2; k <= 6; ++k) {
    auto p3 = EqualityParams<R30>::defaults(CaseId::EQ3, prec30);
    p3.b = R30(1) / 2;
    p3.a = Frequency<R30>::from_value(R30(pi<R30>() - pow10_neg<R30>(k)));
    p3.t_max = EqualityParams<R30>::auto_t_max(CaseId::EQ3, p3.a, prec30);
    auto r3 = check(p3, prec30);
    budget_ok = budget_ok && r3.within_budget();
    R30 d = abs(r3.lhs - r4.lhs);
    if (prev >= 0 && !(d < prev)) monotone = false;
    prev = d;
    dists += (k > 2 ? "," : "") + sci(d, 2);
  }
  v.require(monotone && budget_ok, "EQ3 -> EQ4 lhs distances " + dists);
  return v;
}

// Each golden job against its tail-doubled and truncation-doubled reruns.
Verdict criterion8() {
  Verdict v;
  using R = Real40;
  using std::abs;
  const auto prec = PrecisionSpec::with_working(cli::kGoldenDigits);
  cli::RunConfig cfg;
  int checked = 0;
  for (const auto& job : cli::golden_jobs()) {
    const auto base_p = cli::job_params<R>(job, cfg, prec);
    const auto base = check(base_p, prec);
    auto tails = base_p;
    tails.t_max *= 2;
    tails.x_max *= 2;
    auto terms = base_p;
    terms.n_max *= 2;
    for (const auto& [kind, p] : {std::pair{"tails", tails}, {"terms", terms}}) {
      const auto other = check(p, prec);
      const R allowed = base.error_budget + other.error_budget;
      R worst(0);
      std::string where;
      auto cmp = [&](const std::string& label, const R& x, const R& y) {
        if (abs(x - y) > worst) {
          worst = abs(x - y);
          where = label;
        }
      };
      cmp("lhs", base.lhs, other.lhs);
      cmp("rhs", base.rhs, other.rhs);
      for (const auto& c : base.components)
        if (const auto* o = other.find(c.label)) cmp(c.label, c.value, o->value);
      ++checked;
      if (worst > allowed)
        v.require(false, job.name + " " + kind + ": " + where + " moved " + sci(worst, 3) + " > " + sci(allowed, 3));
    }
  }
  v.require(true, std::to_string(checked) + " doubling comparisons");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  bool long_run = false;
  app.add_option("--only", only, "run a single criterion (1-8)")->check(CLI::Range(1, 8));
  app.add_flag("--long", long_run, "include the full-precision Eq. 4 reproduction");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<int, std::function<Verdict()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
  };
  bool all = true;
  auto report = [&](const std::string& id, const std::function<Verdict()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
      Verdict v = fn();
      pass = v.pass;
      detail = v.detail.str();
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    all = all && pass;
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << " (" << std::fixed
              << std::setprecision(1) << seconds_since(t0) << " s) " << detail << std::endl;
  };
  for (const auto& [n, fn] : criteria) {
    if (only && n != only) continue;
    report(std::to_string(n), fn);
    if (n == 1 && long_run) report("1-long", criterion1_long);
  }
  return all ? 0 : 1;
}
