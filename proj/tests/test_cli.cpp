#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "rhv/cli/config.hpp"
#include "rhv/cli/runner.hpp"

using namespace rhv;
using namespace rhv::cli;
namespace fs = std::filesystem;

#ifndef RHV_CLI_PATH
#define RHV_CLI_PATH "rhv"
#endif

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("rhv_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with `args`, stdout to `out`; returns the exit status.
int run_cli(const std::string& args, const fs::path& out, const std::string& env = "") {
  std::string cmd = env + " '" + std::string(RHV_CLI_PATH) + "' " + args + " > '" + out.string() + "' 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Config, DefaultsAndKeys) {
  RunConfig cfg;
  EXPECT_EQ(cfg.digits, 50);
  EXPECT_FALSE(cfg.digits_set);
  apply_config_text(cfg,
                    "# a comment\n"
                    "case = EQ4, EQ2\n"
                    "\n"
                    "digits = 40   # trailing\n"
                    "a = 2pi\n"
                    "b = -7/2\n"
                    "t_max = 60\n"
                    "n_max = 300\n"
                    "gamma_arg_reading = PLAIN\n"
                    "arg_convention = CONTINUOUS\n"
                    "emit_samples = true\n"
                    "sample_axis = real_axis\n"
                    "workers = 2\n"
                    "timing = false\n",
                    "x.cfg");
  EXPECT_EQ(cfg.cases, (std::vector<std::string>{"EQ4", "EQ2"}));
  EXPECT_EQ(cfg.digits, 40);
  EXPECT_TRUE(cfg.digits_set);
  EXPECT_EQ(cfg.a, "2pi");
  EXPECT_EQ(cfg.b, "-7/2");
  EXPECT_EQ(cfg.n_max, 300);
  EXPECT_EQ(cfg.gamma_reading, GammaArgReading::PLAIN);
  EXPECT_EQ(cfg.arg_convention, ArgConvention::CONTINUOUS);
  EXPECT_TRUE(cfg.emit_samples);
  EXPECT_EQ(cfg.sample_axis, "real_axis");
  EXPECT_EQ(cfg.workers, 2);
  EXPECT_FALSE(cfg.timing);
}

TEST(Config, ErrorsCarryFileAndLine) {
  RunConfig cfg;
  auto message = [&](const std::string& text) {
    try {
      apply_config_text(cfg, text, "c.cfg");
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("digits = 30\nfoo = 1\n").find("c.cfg:2"), std::string::npos);
  EXPECT_NE(message("digits = 30\nfoo = 1\n").find("unknown key 'foo'"), std::string::npos);
  EXPECT_NE(message("digits = 10\n").find("c.cfg:1"), std::string::npos);
  EXPECT_NE(message("digits = 301\n").find("[20, 300]"), std::string::npos);
  EXPECT_NE(message("\n\njust text\n").find("c.cfg:3"), std::string::npos);
  EXPECT_FALSE(message("suite = nightly\n").empty());
  EXPECT_FALSE(message("sample_axis = diagonal\n").empty());
  EXPECT_FALSE(message("gamma_arg_reading = both\n").empty());
  EXPECT_FALSE(message("timing = maybe\n").empty());
  EXPECT_THROW(apply_config_file(cfg, "/nonexistent/rhv.cfg"), ConfigError);
}

TEST(Config, EnvironmentDigits) {
  RunConfig cfg;
  ::setenv("RHV_DIGITS", "35", 1);
  apply_environment(cfg);
  ::unsetenv("RHV_DIGITS");
  EXPECT_EQ(cfg.digits, 35);
  EXPECT_TRUE(cfg.digits_set);
  RunConfig bad;
  ::setenv("RHV_DIGITS", "5", 1);
  EXPECT_THROW(apply_environment(bad), ConfigError);
  ::unsetenv("RHV_DIGITS");
}

TEST(Runner, GoldenJobs) {
  auto jobs = golden_jobs();
  EXPECT_EQ(jobs.size(), 18u);
  int with_residual = 0, gamma_pairs = 0;
  for (const auto& j : jobs) {
    if (!j.paper_residual.empty()) ++with_residual;
    if (j.reading) ++gamma_pairs;
  }
  EXPECT_EQ(with_residual, 4);
  EXPECT_EQ(gamma_pairs, 4);
  RunConfig cfg;
  cfg.suite = "golden";
  EXPECT_EQ(config_jobs(cfg).size(), 18u);
}

TEST(Runner, TierSelection) {
  EXPECT_EQ(with_tier(30, []<class Real>() { return std::numeric_limits<Real>::digits10; }), 40);
  EXPECT_EQ(with_tier(31, []<class Real>() { return std::numeric_limits<Real>::digits10; }), 70);
  EXPECT_EQ(with_tier(200, []<class Real>() { return std::numeric_limits<Real>::digits10; }), 230);
}

TEST(Runner, GridParsing) {
  auto g = parse_grid<Real40>("0:1.9:200", Real40(5));
  EXPECT_EQ(g.n, 200);
  EXPECT_EQ(g.hi, Real40("1.9"));
  auto d = parse_grid<Real40>("", Real40(60));
  EXPECT_EQ(d.hi, 60);
  EXPECT_EQ(d.n, 200);
  EXPECT_THROW(parse_grid<Real40>("0:1", Real40(1)), ConfigError);
  EXPECT_THROW(parse_grid<Real40>("2:1:5", Real40(1)), ConfigError);
  EXPECT_THROW(parse_grid<Real40>("0:x:5", Real40(1)), ConfigError);
}

TEST(Runner, InProcessEq2) {
  RunConfig cfg;
  cfg.cases = {"EQ2"};
  cfg.digits = 30;
  cfg.timing = false;
  std::ostringstream log, out;
  EXPECT_EQ(run(cfg, log, out), kExitOk);
  auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["case"], "EQ2");
  EXPECT_TRUE(j["within_budget"].get<bool>());
  EXPECT_EQ(j["runtime_seconds"], 0);
  EXPECT_NE(log.str().find("EQ2"), std::string::npos);
}

TEST(Runner, BadCaseIsAnErrorRecord) {
  RunConfig cfg;
  cfg.cases = {"EQ2"};
  cfg.b = "0.5";  // outside b >= 1
  cfg.digits = 30;
  std::ostringstream log, out;
  EXPECT_EQ(run(cfg, log, out), kExitError);
}

TEST(Runner, AtomicWriteLeavesNoTemporaries) {
  TempDir dir;
  write_atomic(dir.path() / "a" / "x.json", "{}\n");
  write_atomic(dir.path() / "a" / "x.json", "{\"k\": 1}\n");
  EXPECT_EQ(slurp(dir.path() / "a" / "x.json"), "{\"k\": 1}\n");
  int files = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir.path())) {
    if (e.is_regular_file()) ++files;
    EXPECT_NE(e.path().extension(), ".tmp");
  }
  EXPECT_EQ(files, 1);
}

TEST(Binary, Eq4ScaledDown) {
  TempDir dir;
  auto out = dir.path() / "eq4.json";
  ASSERT_EQ(run_cli("run --case EQ4 --digits 50 --t-max 60 --n-max 300 --out '" + out.string() + "'",
                    dir.path() / "log"),
            0)
      << slurp(dir.path() / "log");
  auto j = nlohmann::json::parse(slurp(out));
  EXPECT_GE(j["matched_digits"].get<int>(), 30);
  EXPECT_TRUE(j["lhs"].is_string());
  EXPECT_TRUE(j["residual"].is_string());
}

TEST(Binary, Eq2ExitsZero) {
  TempDir dir;
  EXPECT_EQ(run_cli("run --case EQ2 --a 1 --b 2 --digits 30", dir.path() / "o"), 0);
}

TEST(Binary, UsageErrorsExitOne) {
  TempDir dir;
  EXPECT_EQ(run_cli("run --case EQ2 --bogus", dir.path() / "o"), 1);
  EXPECT_EQ(run_cli("run --case EQ99", dir.path() / "o"), 1);
  EXPECT_EQ(run_cli("run", dir.path() / "o"), 1);
  std::ofstream(dir.path() / "c.cfg") << "digits = 30\nfoo = 1\n";
  EXPECT_EQ(run_cli("run --case EQ2 --config '" + (dir.path() / "c.cfg").string() + "'", dir.path() / "o"), 1);
  EXPECT_NE(slurp(dir.path() / "o").find("c.cfg:2"), std::string::npos);
}

TEST(Binary, Precedence) {
  TempDir dir;
  auto cfg = dir.path() / "p.cfg";
  std::ofstream(cfg) << "case = EQ2\ndigits = 25\nn_max = 100\n";
  auto digits_of = [&](const std::string& args, const std::string& env) {
    auto out = dir.path() / "out.json";
    EXPECT_EQ(run_cli(args + " --no-timing", out, env), 0) << slurp(out);
    auto text = slurp(out);
    return nlohmann::json::parse(text.substr(text.find('{')))["params"]["digits"].get<int>();
  };
  EXPECT_EQ(digits_of("run --case EQ2 --n-max 100", "RHV_DIGITS=22"), 22);
  EXPECT_EQ(digits_of("run --config '" + cfg.string() + "'", "RHV_DIGITS=22"), 25);
  EXPECT_EQ(digits_of("run --config '" + cfg.string() + "' --digits 21", "RHV_DIGITS=22"), 21);
}

TEST(Binary, ByteIdenticalReruns) {
  TempDir dir;
  const std::string args = "run --case EQ2,EQ4 --digits 30 --t-max 40 --no-timing --workers 2 --out '" +
                           dir.path().string() + "/";
  ASSERT_EQ(run_cli(args + "r1'", dir.path() / "log1"), 0);
  ASSERT_EQ(run_cli(args + "r2'", dir.path() / "log2"), 0);
  for (const char* f : {"EQ2.json", "EQ4.json"}) {
    auto a = slurp(dir.path() / "r1" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, slurp(dir.path() / "r2" / f)) << f;
  }
}

TEST(Binary, SamplesOfTheSechIntegrand) {
  TempDir dir;
  auto csv = dir.path() / "eq4.csv";
  ASSERT_EQ(run_cli("run --case EQ4 --digits 30 --t-max 40 --emit-samples --grid 0:1.9:200 --samples-out '" +
                        csv.string() + "'",
                    dir.path() / "o"),
            0);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# case=EQ4", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line, "t_or_x,integrand_value");
  int rows = 0;
  std::string first;
  while (std::getline(in, line)) {
    if (rows == 0) first = line;
    ++rows;
  }
  EXPECT_EQ(rows, 200);
  // ln|zeta(1/2)| times sech(0) = 1
  Real40 v(first.substr(first.find(',') + 1));
  Real40 ref = log(abs(zeta(Real40("0.5"), PrecisionSpec::with_working(30))));
  EXPECT_LT(abs(v - ref), Real40("1e-25"));
}

TEST(Binary, EmptyGridIsHeaderOnly) {
  TempDir dir;
  auto csv = dir.path() / "e.csv";
  ASSERT_EQ(run_cli("run --case EQ2 --digits 30 --emit-samples --grid 0:1:0 --samples-out '" + csv.string() + "'",
                    dir.path() / "o"),
            0);
  auto text = slurp(csv);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(Binary, RealAxisSamplesAroundThePole) {
  TempDir dir;
  auto csv = dir.path() / "r.csv";
  ASSERT_EQ(run_cli("run --case EQ6A --digits 30 --emit-samples --sample-axis real_axis --grid 0:1:21 "
                    "--samples-out '" + csv.string() + "'",
                    dir.path() / "o"),
            0);
  // The weight vanishes at the pole, so the samples change sign there and
  // shrink towards it.
  std::istringstream in(slurp(csv));
  std::string line;
  std::map<double, double> v;
  std::string at_pole;
  while (std::getline(in, line)) {
    if (line[0] == '#' || line[0] == 't') continue;
    auto comma = line.find(',');
    double x = std::stod(line.substr(0, comma));
    std::string y = line.substr(comma + 1);
    if (std::fabs(x - 0.5) < 1e-12) {
      at_pole = y;
      continue;
    }
    v[x] = std::stod(y);
  }
  EXPECT_EQ(at_pole, "nan");
  ASSERT_EQ(v.size(), 20u);
  for (auto [x, y] : v) {
    if (x > 0.01 && x < 0.49) EXPECT_GT(y, 0) << x;
    if (x > 0.51 && x < 0.99) EXPECT_LT(y, 0) << x;
  }
  EXPECT_LT(std::fabs(v.lower_bound(0.449)->second), std::fabs(v.lower_bound(0.349)->second));
  EXPECT_LT(std::fabs(v.lower_bound(0.549)->second), std::fabs(v.lower_bound(0.649)->second));
}

TEST(Binary, BoundSubcommand) {
  TempDir dir;
  auto out = dir.path() / "b.json";
  ASSERT_EQ(run_cli("bound --a 2pi --T 3.3e9 --family both", out), 0);
  auto j = nlohmann::json::parse(slurp(out));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["family"], "REAL_PART");
  EXPECT_NEAR(std::stod(j[0]["prefactor_c"].get<std::string>()), 0.1002, 5e-4);
  EXPECT_EQ(run_cli("bound --family SIDEWAYS", out), 1);
}
