#include "derand/report.hpp"

#include <algorithm>

#include "derand/error.hpp"

#ifndef DERAND_VERSION
#define DERAND_VERSION "0.0.0"
#endif

namespace derand {

using ojson = nlohmann::ordered_json;

const char* version() { return DERAND_VERSION; }

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {"name",          "params",       "trials",  "successes", "p_hat",
                                                "ci_lower",      "ci_upper",     "claimed_bound",
                                                "claimed_expr",  "verdict",      "premise", "seed",
                                                "wall_ms",       "version"};
  return cols;
}

ojson to_json(const Report& r) {
  ojson j;
  j["name"] = r.name;
  j["params"] = r.params;
  j["trials"] = r.trials;
  j["successes"] = r.successes;
  j["p_hat"] = r.p_hat;
  j["ci_lower"] = r.ci_lower;
  j["ci_upper"] = r.ci_upper;
  j["claimed_bound"] = r.claimed_bound;
  j["claimed_expr"] = r.claimed_expr;
  j["verdict"] = r.verdict;
  j["premise"] = r.premise;
  j["seed"] = r.seed;
  j["wall_ms"] = r.wall_ms;
  j["version"] = r.version;
  return j;
}

Report report_from_json(const ojson& j) {
  if (!j.is_object()) throw InvalidArgument("report must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    const auto& cols = report_columns();
    if (std::find(cols.begin(), cols.end(), key) == cols.end())
      throw InvalidArgument("unknown report field '" + key + "'");
  }
  Report r;
  try {
    r.name = j.at("name").get<std::string>();
    r.params = j.at("params");
    r.trials = j.at("trials").get<std::uint64_t>();
    r.successes = j.at("successes").get<std::uint64_t>();
    r.p_hat = j.at("p_hat").get<double>();
    r.ci_lower = j.at("ci_lower").get<double>();
    r.ci_upper = j.at("ci_upper").get<double>();
    r.claimed_bound = j.at("claimed_bound").get<double>();
    r.claimed_expr = j.at("claimed_expr").get<std::string>();
    r.verdict = j.at("verdict").get<std::string>();
    r.premise = j.at("premise");
    r.seed = j.at("seed").get<std::uint64_t>();
    r.wall_ms = j.at("wall_ms").get<double>();
    r.version = j.at("version").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string render_json(const Report& report, bool with_wall_clock) {
  auto j = to_json(report);
  if (!with_wall_clock) j.erase("wall_ms");
  return j.dump(2) + "\n";
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string csv_header() {
  std::string out;
  for (const auto& c : report_columns()) out += (out.empty() ? "" : ",") + c;
  return out + "\n";
}

std::string csv_row(const Report& report) {
  const auto j = to_json(report);
  std::string out;
  bool first = true;
  for (const auto& c : report_columns()) {
    const auto& v = j.at(c);
    out += first ? "" : ",";
    first = false;
    out += csv_quote(v.is_string() ? v.get<std::string>() : v.dump());
  }
  return out + "\n";
}

ojson premise_to_json(const Premise& premise) {
  ojson j;
  j["ok"] = premise.ok;
  j["diagnostic"] = premise.diagnostic;
  j["notes"] = premise.notes;
  if (premise.lll) {
    const auto& l = *premise.lll;
    j["lll"] = {{"rule", l.rule},
                {"p_max", l.p_max},
                {"d_max", l.d_max},
                {"premise_value", l.premise_value},
                {"bound", l.bound},
                {"guaranteed", l.guaranteed}};
  }
  return j;
}

void fill_estimate(Report& report, const Estimate& e) {
  report.trials = e.trials;
  report.successes = e.successes;
  report.p_hat = e.p_hat;
  report.ci_lower = e.one_sided_lower;
  report.ci_upper = e.one_sided_upper;
  report.seed = e.master_seed;
}

}  // namespace derand
