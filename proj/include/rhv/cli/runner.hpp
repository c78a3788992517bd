#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "rhv/cli/config.hpp"
#include "rhv/criteria.hpp"
#include "rhv/criteria/report.hpp"

namespace rhv::cli {

enum ExitCode { kExitOk = 0, kExitError = 1, kExitOutsideBudget = 2 };

/// One check to run: a case plus per-job overrides.
struct Job {
  CaseId id = CaseId::EQ2;
  std::string name;
  std::optional<GammaArgReading> reading;
  std::optional<std::string> t_max;
  std::optional<int> n_max;
  std::string paper_residual;  // published value, for reference only
};

struct JobOutcome {
  nlohmann::ordered_json record;
  int status = kExitOk;
  std::string summary;
};

/// Working digits of the golden suite.
inline constexpr int kGoldenDigits = 30;

/// Every case at reduced precision; Eq. 4 at the scaled-down truncation, and
/// both readings of the Gamma forms at b = -1/2.
inline std::vector<Job> golden_jobs() {
  std::vector<Job> jobs;
  for (CaseId c : kAllCases) {
    Job j;
    j.id = c;
    j.name = std::string(to_string(c));
    if (c == CaseId::EQ4) {
      j.t_max = "60";
      j.n_max = 300;
      j.paper_residual = "1.162608547e-81";
    }
    if (c == CaseId::EQ6A) j.paper_residual = "8.8044282e-32";
    if (c == CaseId::EQ7A) j.paper_residual = "1.14767406e-31";
    if (c == CaseId::EQ8) j.paper_residual = "8.74533283e-30";
    if (c == CaseId::EQ9A || c == CaseId::EQ9B) {
      for (GammaArgReading r : {GammaArgReading::GAMMA, GammaArgReading::PLAIN}) {
        Job v = j;
        v.reading = r;
        v.name += "_" + std::string(to_string(r));
        jobs.push_back(v);
      }
      continue;
    }
    jobs.push_back(j);
  }
  return jobs;
}

inline std::vector<Job> config_jobs(const RunConfig& cfg) {
  if (cfg.suite == "golden") return golden_jobs();
  std::vector<Job> jobs;
  for (const auto& c : cfg.cases) {
    Job j;
    j.id = parse_case(c);
    j.name = std::string(to_string(j.id));
    jobs.push_back(j);
  }
  return jobs;
}

/// Calls f.template operator()<Real>() with the smallest tier holding
/// digits + 10 decimal digits.
template <class F>
decltype(auto) with_tier(int digits, F&& f) {
  if (digits + 10 <= 40) return f.template operator()<Real40>();
  if (digits + 10 <= 70) return f.template operator()<Real70>();
  if (digits + 10 <= 130) return f.template operator()<Real130>();
  if (digits + 10 <= 230) return f.template operator()<Real230>();
  if (digits + 10 <= 320) return f.template operator()<Real320>();
  throw Error(ErrorKind::InvalidParams, "digits beyond the largest precision tier");
}

template <class Real>
EqualityParams<Real> job_params(const Job& job, const RunConfig& cfg, const PrecisionSpec& prec) {
  auto p = EqualityParams<Real>::defaults(job.id, prec);
  if (cfg.a) p.a = parse_frequency<Real>(*cfg.a);
  if (cfg.b) p.b = parse_real<Real>(*cfg.b);
  if (cfg.x_max) p.x_max = parse_real<Real>(*cfg.x_max);
  if (job.t_max) p.t_max = parse_real<Real>(*job.t_max);
  if (cfg.t_max) p.t_max = parse_real<Real>(*cfg.t_max);
  else if (cfg.a && !job.t_max) p.t_max = EqualityParams<Real>::auto_t_max(job.id, p.a, prec);
  if (job.n_max) p.n_max = *job.n_max;
  if (cfg.n_max) p.n_max = *cfg.n_max;
  p.gamma_reading = job.reading.value_or(cfg.gamma_reading);
  p.arg_convention = cfg.arg_convention;
  return p;
}

/// Writes `content` to a temporary sibling and renames it into place.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

/// A file when there is one output and `base` carries the extension,
/// otherwise base/name.ext.
inline std::filesystem::path output_path(const std::string& base, const std::string& name,
                                         const std::string& ext, bool single) {
  std::filesystem::path p(base);
  if (single && p.extension() == ext) return p;
  return p / (name + ext);
}

template <class Real>
struct Grid {
  Real lo{0}, hi{0};
  int n = 0;
};

/// "lo:hi:n" with lo and hi as decimals or p/q.
template <class Real>
Grid<Real> parse_grid(const std::string& text, const Real& default_hi) {
  if (text.empty()) return {Real(0), default_hi, 200};
  auto c1 = text.find(':');
  auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw ConfigError("grid: expected lo:hi:n, got '" + text + "'");
  Grid<Real> g;
  try {
    g.lo = parse_real<Real>(text.substr(0, c1));
    g.hi = parse_real<Real>(text.substr(c1 + 1, c2 - c1 - 1));
  } catch (const Error&) {
    throw ConfigError("grid: bad bound in '" + text + "'");
  }
  g.n = detail::to_int(text.substr(c2 + 1), "grid");
  if (g.n < 0 || g.hi < g.lo) throw ConfigError("grid: need n >= 0 and lo <= hi in '" + text + "'");
  return g;
}

/// CSV of one integrand of the case on an evenly spaced grid: a '#' line
/// naming the case and parameters, the column header, then one row per point.
template <class Real>
std::string samples_csv(const EqualityParams<Real>& p, const RunConfig& cfg, const PrecisionSpec& prec) {
  const bool real_axis = cfg.sample_axis == "real_axis";
  Grid<Real> g = parse_grid<Real>(cfg.grid, real_axis ? p.x_max : p.t_max);
  std::ostringstream out;
  out << "# case=" << to_string(p.case_id) << " a=" << to_decimal(p.a.value(), 20)
      << " b=" << to_decimal(p.b, 20) << " axis=" << cfg.sample_axis << " digits=" << prec.working_digits
      << "\n";
  out << "t_or_x,integrand_value\n";
  if (g.n == 0) return out.str();
  auto spec = case_integrand(p, real_axis, to_double(g.hi) + 1, prec);
  for (int i = 0; i < g.n; ++i) {
    Real t = g.n == 1 ? g.lo : Real(g.lo + (g.hi - g.lo) * i / (g.n - 1));
    out << to_decimal(t, 20) << ",";
    try {
      out << to_decimal(spec(t, prec), 30);
    } catch (const Error&) {
      out << "nan";  // singular point on the grid
    }
    out << "\n";
  }
  return out.str();
}

template <class Real>
JobOutcome run_job_tier(const Job& job, const RunConfig& cfg, const PrecisionSpec& prec, bool single) {
  JobOutcome o;
  auto p = job_params<Real>(job, cfg, prec);
  auto r = check(p, prec);
  o.record = to_json(r);
  if (!cfg.timing) o.record["runtime_seconds"] = 0;
  if (!job.paper_residual.empty()) o.record["paper_residual"] = job.paper_residual;
  o.status = r.within_budget() ? kExitOk : kExitOutsideBudget;
  o.summary = job.name + " residual=" + to_decimal(r.residual, 6) + " budget=" +
              to_decimal(r.error_budget, 3) + " matched_digits=" + std::to_string(r.matched_digits) +
              (r.within_budget() ? " ok" : " OUTSIDE_BUDGET");
  if (cfg.emit_samples)
    write_atomic(output_path(cfg.samples_out, job.name, ".csv", single), samples_csv(p, cfg, prec));
  return o;
}

inline JobOutcome run_job(const Job& job, const RunConfig& cfg, int digits, bool single) {
  try {
    const auto prec = PrecisionSpec::with_working(digits);
    return with_tier(digits, [&]<class Real>() { return run_job_tier<Real>(job, cfg, prec, single); });
  } catch (const std::exception& e) {
    JobOutcome o;
    o.status = kExitError;
    std::string kind = "Error";
    if (auto* err = dynamic_cast<const Error*>(&e)) kind = std::string(to_string(err->kind()));
    o.record = {{"case", job.name}, {"error", kind}, {"message", e.what()}};
    o.summary = job.name + " error " + kind + ": " + e.what();
    return o;
  }
}

/// Runs every job of the configuration, `workers` at a time, writes the JSON
/// records and returns the exit code.
/// The golden suite runs at kGoldenDigits unless digits were set explicitly.
inline int run(const RunConfig& cfg, std::ostream& log = std::cerr, std::ostream& json_out = std::cout) {
  std::vector<Job> jobs = config_jobs(cfg);
  if (jobs.empty()) throw ConfigError("nothing to run: give --case or --suite");
  const int digits = cfg.suite == "golden" && !cfg.digits_set ? kGoldenDigits : cfg.digits;
  const bool single = jobs.size() == 1;
  std::vector<JobOutcome> outcomes(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < jobs.size();) outcomes[i] = run_job(jobs[i], cfg, digits, single);
  };
  const int n = std::min<int>(cfg.workers, static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int status = kExitOk;
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (size_t i = 0; i < jobs.size(); ++i) {
    log << outcomes[i].summary << "\n";
    if (outcomes[i].status == kExitError) status = kExitError;
    else if (outcomes[i].status == kExitOutsideBudget && status == kExitOk) status = kExitOutsideBudget;
    if (cfg.out.empty())
      all.push_back(outcomes[i].record);
    else
      write_atomic(output_path(cfg.out, jobs[i].name, ".json", single), outcomes[i].record.dump(2) + "\n");
  }
  if (cfg.out.empty()) json_out << (single ? all[0] : all).dump(2) << "\n";
  return status;
}

}  // namespace rhv::cli
