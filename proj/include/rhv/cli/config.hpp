#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhv/criteria/params.hpp"

namespace rhv::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything one invocation needs. Numbers stay as text until the precision
/// tier is known.
struct RunConfig {
  std::vector<std::string> cases;
  std::string suite;  // "" or "golden"
  int digits = 50;
  bool digits_set = false;  // by RHV_DIGITS, the file or --digits
  std::optional<std::string> a, b, t_max, x_max;
  std::optional<int> n_max;
  std::string out;  // empty: JSON to stdout
  bool emit_samples = false;
  std::string samples_out = "samples";
  std::string grid;  // "lo:hi:n"; empty means 0:t_max:200
  std::string sample_axis = "vertical";
  GammaArgReading gamma_reading = GammaArgReading::GAMMA;
  ArgConvention arg_convention = ArgConvention::LITTLEWOOD;
  int workers = 1;
  bool timing = true;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto lo = s.find_first_not_of(ws);
  if (lo == std::string::npos) return "";
  auto hi = s.find_last_not_of(ws);
  return s.substr(lo, hi - lo + 1);
}

inline int to_int(const std::string& v, const std::string& where) {
  try {
    size_t used = 0;
    int n = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected an integer, got '" + v + "'");
  }
}

inline bool to_bool(const std::string& v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(where + ": expected a boolean, got '" + v + "'");
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace detail

inline void set_digits(RunConfig& cfg, int d, const std::string& where) {
  if (d < 20 || d > 300) throw ConfigError(where + ": digits must lie in [20, 300]");
  cfg.digits = d;
  cfg.digits_set = true;
}

/// Applies one key = value setting; `where` names its origin for messages.
/// Keys use the config-file spelling (t_max), flags map onto them.
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value,
                          const std::string& where) {
  auto positive_text = [&](std::optional<std::string>& slot) {
    if (value.empty()) throw ConfigError(where + ": empty value for " + key);
    slot = value;
  };
  try {
    if (key == "case") {
      cfg.cases = detail::split_list(value);
      for (const auto& c : cfg.cases) parse_case(c);
    } else if (key == "suite") {
      if (value != "golden") throw ConfigError(where + ": unknown suite '" + value + "'");
      cfg.suite = value;
    } else if (key == "digits") {
      set_digits(cfg, detail::to_int(value, where), where);
    } else if (key == "a") {
      positive_text(cfg.a);
    } else if (key == "b") {
      positive_text(cfg.b);
    } else if (key == "t_max") {
      positive_text(cfg.t_max);
    } else if (key == "x_max") {
      positive_text(cfg.x_max);
    } else if (key == "n_max") {
      int n = detail::to_int(value, where);
      if (n <= 0) throw ConfigError(where + ": n_max must be positive");
      cfg.n_max = n;
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "emit_samples") {
      cfg.emit_samples = detail::to_bool(value, where);
    } else if (key == "samples_out") {
      cfg.samples_out = value;
    } else if (key == "grid") {
      cfg.grid = value;
    } else if (key == "sample_axis") {
      if (value != "vertical" && value != "real_axis")
        throw ConfigError(where + ": sample_axis must be vertical or real_axis");
      cfg.sample_axis = value;
    } else if (key == "gamma_arg_reading") {
      cfg.gamma_reading = parse_gamma_reading(value);
    } else if (key == "arg_convention") {
      cfg.arg_convention = parse_arg_convention(value);
    } else if (key == "workers") {
      int w = detail::to_int(value, where);
      if (w < 1) throw ConfigError(where + ": workers must be at least 1");
      cfg.workers = w;
    } else if (key == "timing") {
      cfg.timing = detail::to_bool(value, where);
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

/// Flat "key = value" text with '#' comments.
inline void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": missing key");
    apply_setting(cfg, key, value, where);
  }
}

inline void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str(), path);
}

/// RHV_DIGITS replaces the built-in default; a config file or --digits wins
/// over it.
inline void apply_environment(RunConfig& cfg) {
  if (const char* d = std::getenv("RHV_DIGITS"); d && *d)
    set_digits(cfg, detail::to_int(d, "RHV_DIGITS"), "RHV_DIGITS");
}

}  // namespace rhv::cli
