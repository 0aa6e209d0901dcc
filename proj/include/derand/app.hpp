#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "derand/construction.hpp"
#include "derand/instances.hpp"
#include "derand/report.hpp"

namespace derand {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitRefuted = 2, kExitBudget = 3 };

/// One experiment. Built from a JSON document and/or command-line flags;
/// unset optional keys fall back to per-construction defaults.
struct ExperimentConfig {
  std::string command;
  std::string name;
  std::optional<std::string> input;
  std::optional<std::string> gen;
  std::optional<std::uint64_t> gen_seed;
  std::uint64_t trials = kDefaultTrials;
  std::uint64_t seed = 0;
  double confidence = kDefaultConfidence;
  unsigned threads = 0;
  std::string format = "json";
  std::optional<std::string> output;
  std::optional<double> claim;
  bool statistic = false;
  bool search = false;

  // Construction and game parameters.
  std::optional<std::uint64_t> k, beta, colors, bits, members, universe_bits, m, dim, rounds, start, goal,
      budget, tie_seed, relabel_seed;
  std::optional<std::string> permutation, adversary;
  std::optional<nlohmann::json> distribution, functions, tests;

  /// Keys accepted in a config document.
  static const std::vector<std::string>& keys();
  /// Rejects unknown keys and mistyped values with InvalidArgument.
  static ExperimentConfig from_json(const nlohmann::json& j);
  /// Overlays the keys present in `j` onto this config.
  void merge(const nlohmann::json& j);
  /// Echo for reports: every set key except the execution-only ones
  /// (threads, format, output), which must not change a report.
  nlohmann::ordered_json echo() const;
};

/// "kind[:key=value,...]".
struct GenSpec {
  std::string kind;
  std::map<std::string, std::string> args;

  static GenSpec parse(const std::string& text);
  std::uint64_t get(const std::string& key) const;
  std::uint64_t get(const std::string& key, std::uint64_t fallback) const;
};

enum class InstanceKind { Graph, Hypergraph, Cnf, IntMatrix, BinaryMatrix, UnitVectors, SetFamily };

/// The instance shape a generator spec produces.
InstanceKind gen_kind(const GenSpec& spec);
/// Canonical text of a generated instance.
std::string generate_instance_text(const std::string& spec, std::uint64_t seed);

Graph load_graph(const ExperimentConfig& cfg);
CnfFormula load_cnf(const ExperimentConfig& cfg);
Hypergraph load_hypergraph(const ExperimentConfig& cfg);
BinaryMatrix load_binary_matrix(const ExperimentConfig& cfg);
IntMatrix load_int_matrix(const ExperimentConfig& cfg);
UnitVectors load_unit_vectors(const ExperimentConfig& cfg);
SetFamily load_set_family(const ExperimentConfig& cfg);

/// Builds the named construction (one of construction_names() or
/// "routing") from the config.
Construction build_from_config(const ExperimentConfig& cfg);

struct CommandResult {
  int exit_code = kExitOk;
  std::optional<Report> report;
  /// Solution text written by solve, generated instance for gen, merged
  /// reports for report-merge.
  std::string text;
  /// Human-readable diagnostic for stderr.
  std::string message;
};

CommandResult cmd_verify(const ExperimentConfig& cfg);
CommandResult cmd_solve(const ExperimentConfig& cfg);
CommandResult cmd_game(const ExperimentConfig& cfg);
CommandResult cmd_gen(const ExperimentConfig& cfg);
/// Merges JSON reports into CSV ("csv") or a JSON array ("json").
CommandResult cmd_report_merge(const std::vector<std::string>& report_texts, const std::string& format);

/// Dispatches on cfg.command and converts library exceptions to exit code 1.
CommandResult run_command(const ExperimentConfig& cfg);

const std::vector<std::string>& game_names();

/// Report text in the configured format ("json" or "csv").
std::string render_report(const Report& report, const std::string& format);

}  // namespace derand
