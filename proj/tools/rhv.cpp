// rhv: evaluate the equalities, the zero bounds, and the golden suite.
//
//   rhv run --case EQ4 --digits 50 --t-max 60 --n-max 300
//   rhv run --suite golden --out results/
//   rhv bound --a 2pi --T 3.3e9
//
// Settings are layered: built-in defaults, then RHV_DIGITS, then --config
// FILE, then flags. Exit status: 0 all residuals within budget, 2 some
// outside, 1 on errors.

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "rhv/cli/runner.hpp"
#include "rhv/zero_bound.hpp"

namespace {

struct Flag {
  const char* name;
  const char* key;
  const char* help;
  std::optional<std::string> value;
};

int run_bound(const std::string& a_text, const std::string& T_text, const std::string& k_text,
              const std::string& family_text, int digits) {
  using namespace rhv;
  return cli::with_tier(digits, [&]<class Real>() {
    BoundParams<Real> p;
    p.a = parse_frequency<Real>(a_text).value();
    if (!T_text.empty()) p.T = parse_real<Real>(T_text);
    if (!k_text.empty()) p.k = parse_real<Real>(k_text);
    std::vector<BoundFamily> families;
    if (family_text == "REAL_PART" || family_text == "both") families.push_back(BoundFamily::REAL_PART);
    if (family_text == "IMAG_PART" || family_text == "both") families.push_back(BoundFamily::IMAG_PART);
    if (families.empty()) throw cli::ConfigError("--family: expected REAL_PART, IMAG_PART or both");
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (BoundFamily f : families) out.push_back(to_json(bound_I(p, f), p.a));
    std::cout << (out.size() == 1 ? out[0] : out).dump(2) << "\n";
    return 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of integral equalities equivalent to the Riemann hypothesis"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "evaluate cases and write JSON reports");
  std::vector<Flag> flags{
      {"--case", "case", "case ids, comma separated (EQ2, EQ4, EQ9A, ...)", {}},
      {"--suite", "suite", "named suite: golden", {}},
      {"--digits", "digits", "working digits, 20..300 (default 50, golden 30)", {}},
      {"--a", "a", "a as a decimal or a multiple of pi (2pi, pi/2)", {}},
      {"--b", "b", "b as a decimal or p/q", {}},
      {"--t-max", "t_max", "vertical truncation", {}},
      {"--x-max", "x_max", "real-axis truncation", {}},
      {"--n-max", "n_max", "series truncation", {}},
      {"--out", "out", "output file (.json, one case) or directory", {}},
      {"--samples-out", "samples_out", "CSV file (.csv, one case) or directory", {}},
      {"--grid", "grid", "sample grid lo:hi:n (default 0:t_max:200)", {}},
      {"--sample-axis", "sample_axis", "vertical or real_axis", {}},
      {"--gamma-arg-reading", "gamma_arg_reading", "GAMMA or PLAIN, for EQ9A/EQ9B", {}},
      {"--arg-convention", "arg_convention", "LITTLEWOOD or CONTINUOUS", {}},
      {"--workers", "workers", "cases run in parallel", {}},
  };
  for (auto& f : flags) run->add_option(f.name, f.value, f.help);
  bool emit_samples = false;
  bool no_timing = false;
  std::string config_path;
  run->add_flag("--emit-samples", emit_samples, "write integrand samples as CSV");
  run->add_flag("--no-timing", no_timing, "write runtime_seconds as 0 (byte-identical reruns)");
  run->add_option("--config", config_path, "key = value settings file");

  auto* bound = app.add_subcommand("bound", "closed-form bound on off-line zero contributions");
  std::string b_a = "1", b_T, b_k, b_family = "REAL_PART";
  int b_digits = 30;
  bound->add_option("--a", b_a, "a (decimal or multiple of pi)");
  bound->add_option("--T", b_T, "height below which all zeros are on the line (default 3.3e9)");
  bound->add_option("--k", b_k, "verified zero count; sets T = 2 pi k / ln k");
  bound->add_option("--family", b_family, "REAL_PART, IMAG_PART or both");
  bound->add_option("--digits", b_digits, "working digits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rhv::cli::kExitError;
  }

  try {
    if (*bound) return run_bound(b_a, b_T, b_k, b_family, b_digits);
    rhv::cli::RunConfig cfg;
    rhv::cli::apply_environment(cfg);
    if (!config_path.empty()) rhv::cli::apply_config_file(cfg, config_path);
    for (const auto& f : flags)
      if (f.value) rhv::cli::apply_setting(cfg, f.key, *f.value, f.name);
    if (emit_samples) cfg.emit_samples = true;
    if (no_timing) cfg.timing = false;
    return rhv::cli::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "rhv: " << e.what() << "\n";
    return rhv::cli::kExitError;
  }
}
