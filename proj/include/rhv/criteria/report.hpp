#pragma once

#include <json.hpp>

#include "rhv/criteria/check.hpp"

namespace rhv {

/// Decimal digits printed for high-precision values.
inline int report_digits(const PrecisionSpec& prec) { return prec.working_digits; }

/// {case, params, lhs, rhs, residual, matched_digits, error_budget,
///  within_budget, components, assembly, runtime_seconds}; every
/// high-precision number is a decimal string. `assembly` maps each component
/// to how it enters its side ("+lhs", "-rhs", ...).
template <class Real>
nlohmann::ordered_json to_json(const CheckResult<Real>& r) {
  const int d = report_digits(r.prec);
  nlohmann::ordered_json params{
      {"a", to_decimal(r.params.a.value(), d)},
      {"a_over_pi", to_decimal(r.params.a.over_pi(), d)},
      {"b", to_decimal(r.params.b, d)},
      {"t_max", to_decimal(r.params.t_max, 20)},
      {"x_max", to_decimal(r.params.x_max, 20)},
      {"n_max", r.params.n_max},
      {"digits", r.prec.working_digits},
      {"target_digits", r.prec.target_digits},
  };
  if (r.params.case_id == CaseId::EQ9A || r.params.case_id == CaseId::EQ9B)
    params["gamma_reading"] = std::string(to_string(r.params.gamma_reading));
  nlohmann::ordered_json comps = nlohmann::ordered_json::object();
  nlohmann::ordered_json assembly = nlohmann::ordered_json::object();
  for (const auto& c : r.components) {
    comps[c.label] = to_decimal(c.value, d);
    assembly[c.label] = std::string(c.sign > 0 ? "+" : "-") + (c.side == Side::LHS ? "lhs" : "rhs");
  }
  return {
      {"case", std::string(to_string(r.params.case_id))},
      {"params", params},
      {"lhs", to_decimal(r.lhs, d)},
      {"rhs", to_decimal(r.rhs, d)},
      {"residual", to_decimal(r.residual, d)},
      {"matched_digits", r.matched_digits},
      {"error_budget", to_decimal(r.error_budget, 10)},
      {"within_budget", r.within_budget()},
      {"components", comps},
      {"assembly", assembly},
      {"runtime_seconds", r.runtime_seconds},
  };
}

}  // namespace rhv
