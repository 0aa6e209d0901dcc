#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "derand/lll.hpp"
#include "derand/rng.hpp"
#include "derand/stats.hpp"

namespace derand {

// Candidate encodings. Each construction samples exactly one of these shapes.

struct BitAssignment {
  std::vector<std::uint8_t> bits;
  bool operator==(const BitAssignment&) const = default;
};

/// Vertex -> color in [0, colors).
struct Coloring {
  std::vector<std::uint32_t> colors;
  bool operator==(const Coloring&) const = default;
};

/// Vertex -> component in [0, parts).
struct Partition {
  std::vector<std::uint32_t> parts;
  bool operator==(const Partition&) const = default;
};

struct SignVector {
  std::vector<std::int8_t> signs;
  bool operator==(const SignVector&) const = default;
};

struct Permutation {
  std::vector<std::uint32_t> perm;
  bool operator==(const Permutation&) const = default;
};

/// Indicator vector over a finite universe.
struct Subset {
  std::vector<std::uint8_t> members;
  std::size_t size() const;
  bool operator==(const Subset&) const = default;
};

/// k hash functions into [0, n_bits), tabulated on the members of the
/// encoded set (tables[i][j] = h_i(j-th member)). Hash values of
/// non-members are derived from `salt` on demand.
struct HashFamily {
  std::uint32_t n_bits = 0;
  std::vector<std::vector<std::uint32_t>> tables;
  std::uint64_t salt = 0;
  bool operator==(const HashFamily&) const = default;
};

struct NumberTuple {
  std::vector<std::uint64_t> values;
  bool operator==(const NumberTuple&) const = default;
};

struct CycleList {
  std::vector<std::vector<std::uint32_t>> cycles;
  bool operator==(const CycleList&) const = default;
};

using Candidate = std::variant<BitAssignment, Coloring, Partition, SignVector, Permutation, Subset,
                               HashFamily, NumberTuple, CycleList>;

/// Canonical one-line text form, e.g. "bits 0110".
std::string to_text(const Candidate& candidate);
/// Packed binary form used for the compressed-size report.
std::vector<std::uint8_t> to_bytes(const Candidate& candidate);

struct Premise {
  bool ok = true;
  /// Why the premise failed; empty when ok.
  std::string diagnostic;
  /// Non-fatal remarks (e.g. the instance sits outside a proof step).
  std::vector<std::string> notes;
  /// Local-lemma numbers recomputed from the instance, when applicable.
  std::optional<LllReport> lll;

  void fail(const std::string& why);
};

/// Visitor receiving each candidate with its probability under the sampler.
using CandidateVisitor = std::function<void(const Candidate&, double)>;

/// A sampler over a finite candidate space together with a success
/// predicate and a claimed lower bound on the success probability.
struct Construction {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  Premise premise;
  double claimed_prob = 0.0;
  /// Closed form of the claim, e.g. "(1 - e/2^k)^m".
  std::string claimed_expr;

  std::function<Candidate(RngStream&)> sample;
  std::function<bool(const Candidate&)> is_good;
  /// Turns a good candidate into the final solution; identity when unset.
  std::function<Candidate(const Candidate&)> post_process;
  /// Validity checker for post-processed solutions.
  std::function<bool(const Candidate&)> validate_solution;

  /// Optional real-valued statistic with its exact expectation.
  std::function<double(const Candidate&)> statistic;
  std::string statistic_name;
  std::optional<double> statistic_expected;

  /// Number of candidates, and an exact enumerator when one exists.
  double space_size = std::numeric_limits<double>::infinity();
  std::function<void(const CandidateVisitor&)> enumerate;

  Candidate finish(const Candidate& good) const {
    return post_process ? post_process(good) : good;
  }
};

inline constexpr double kMaxEnumeration = 16777216.0;  // 2^24

/// Exact Pr[is_good] by enumerating the candidate space. Throws Refusal when
/// the space exceeds 2^24 or has no enumerator.
double exact_good_fraction(const Construction& c);

struct Evaluation {
  Estimate estimate;
  Verdict verdict;
  /// False when the premise failed; the verdict is then informational.
  bool binding = true;
};

Evaluation evaluate(const Construction& c, std::uint64_t trials, std::uint64_t seed,
                    const TrialOptions& options = {});

/// Monte Carlo mean of the construction's statistic.
MeanEstimate estimate_statistic(const Construction& c, std::uint64_t trials, std::uint64_t seed,
                                const TrialOptions& options = {});

}  // namespace derand
