#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "derand/construction.hpp"
#include "derand/stats.hpp"

namespace derand {

const char* version();

/// Machine-readable result of one experiment. The JSON form has exactly
/// the fields below, in this order; CSV uses the same column order.
struct Report {
  std::string name;
  /// Config echo plus instance parameters; command-specific results live
  /// under params["results"].
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 1.0;
  double claimed_bound = 0.0;
  std::string claimed_expr;
  /// CONSISTENT, REFUTED, INCONCLUSIVE, NON-BINDING or NONE.
  std::string verdict;
  nlohmann::ordered_json premise = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  std::string version;

  bool operator==(const Report&) const = default;
};

const std::vector<std::string>& report_columns();

nlohmann::ordered_json to_json(const Report& report);
/// Throws InvalidArgument on unknown, missing or mistyped fields.
Report report_from_json(const nlohmann::ordered_json& j);

/// Pretty JSON text; `with_wall_clock = false` drops the timing field so
/// repeated runs compare byte for byte.
std::string render_json(const Report& report, bool with_wall_clock = true);

std::string csv_header();
std::string csv_row(const Report& report);

nlohmann::ordered_json premise_to_json(const Premise& premise);
void fill_estimate(Report& report, const Estimate& estimate);

}  // namespace derand
