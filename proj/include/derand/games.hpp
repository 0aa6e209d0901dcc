#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "derand/constructions.hpp"
#include "derand/instances.hpp"
#include "derand/rng.hpp"
#include "derand/stats.hpp"

namespace derand {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

std::string to_string(const Rational& r);

// ---------------------------------------------------------------------------
// Framework

enum class GameMode { WinNoHalt, Penalty };

enum class Outcome { Win, Lose, Halt, Timeout, Rejected };

std::string to_string(GameMode mode);
std::string to_string(Outcome outcome);

/// What the environment sends before each agent move.
struct Observation {
  /// Message payload (a vertex degree, an edge count, ...); 0 for the empty message.
  std::int64_t value = 0;
  /// Legal actions are [0, actions); 0 means any natural number.
  std::uint64_t actions = 0;
  /// Distribution handed to the agent in penalty-test games.
  std::shared_ptr<const DiscreteDistribution> dist;

  bool operator==(const Observation& other) const;
};

struct StepResult {
  enum class Kind { Continue, Win, Lose, Halt, Reject };
  Kind kind = Kind::Continue;
  Observation observation;
  /// Penalty charged for the move just made.
  double penalty = 0.0;
  std::string note;

  static StepResult next(Observation obs, double penalty = 0.0) { return {Kind::Continue, std::move(obs), penalty, {}}; }
  static StepResult win() { return {Kind::Win, {}, 0.0, {}}; }
  static StepResult lose() { return {Kind::Lose, {}, 0.0, {}}; }
  static StepResult halt(double penalty = 0.0) { return {Kind::Halt, {}, penalty, {}}; }
  static StepResult reject(std::string why) { return {Kind::Reject, {}, 0.0, std::move(why)}; }
};

/// One playthrough. Deterministic in the sequence of actions it receives.
class Episode {
 public:
  virtual ~Episode() = default;
  virtual StepResult start() = 0;
  virtual StepResult step(std::uint64_t action) = 0;
  virtual std::unique_ptr<Episode> clone() const = 0;
};

/// Immutable game template; every playout runs on its own Episode.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual std::string name() const = 0;
  virtual GameMode mode() const = 0;
  virtual std::unique_ptr<Episode> begin() const = 0;
};

struct Round {
  Observation observation;
  std::uint64_t action = 0;
  double penalty = 0.0;

  bool operator==(const Round&) const = default;
};

struct Transcript {
  std::vector<Round> rounds;
  Outcome outcome = Outcome::Timeout;
  double penalty = 0.0;
  std::string note;

  std::vector<std::uint64_t> actions() const;
  bool operator==(const Transcript&) const = default;
};

using Agent = std::function<std::uint64_t(const std::vector<Round>& history, const Observation& obs, RngStream& rng)>;

/// Uniform over [0, obs.actions).
Agent uniform_agent();
/// Draws from obs.dist.
Agent sampling_agent();
/// Plays actions[i] in round i and 0 afterwards.
Agent scripted_agent(std::vector<std::uint64_t> actions);

/// Alternates observations and actions until the game ends or max_rounds
/// moves have been made (Timeout). Out-of-range actions end the game as
/// Rejected.
Transcript play(const Agent& agent, const Environment& env, std::uint64_t max_rounds, RngStream& rng);
Transcript replay(const Environment& env, std::span<const std::uint64_t> actions, std::uint64_t max_rounds);

/// Win probability of `agent`; trial i plays on RngStream(seed, i).
Estimate estimate_win_probability(const Environment& env, const Agent& agent, std::uint64_t max_rounds,
                                  std::uint64_t trials, std::uint64_t seed, const TrialOptions& options = {});
/// Mean total penalty; runs that do not halt within max_rounds throw.
MeanEstimate estimate_penalty(const Environment& env, const Agent& agent, std::uint64_t max_rounds,
                              std::uint64_t trials, std::uint64_t seed, const TrialOptions& options = {});

struct SearchResult {
  std::optional<std::vector<std::uint64_t>> winner;
  std::uint64_t nodes = 0;
  bool capped = false;
};

inline constexpr std::uint64_t kSearchNodeCap = 1000000;

/// Depth-first search of the action tree for a winning action sequence
/// (lexicographically first). Needs finite action ranges.
SearchResult search_winning_actions(const Environment& env, std::uint64_t max_rounds,
                                    std::uint64_t node_cap = kSearchNodeCap);

/// Maps the agent's number to a neighbor (or edge) index. Arguments: round
/// (1-based), current vertex, past actions, number of choices. Must return a
/// permutation of [0, choices).
using Relabel = std::function<std::vector<std::uint32_t>(std::uint64_t round, std::uint32_t vertex,
                                                          std::span<const std::uint64_t> past,
                                                          std::size_t choices)>;
Relabel identity_relabel();
/// Pseudo-random but deterministic in (seed, round, vertex, past actions).
Relabel seeded_relabel(std::uint64_t seed);

// ---------------------------------------------------------------------------
// Even-Odds

/// Environment bit e_i as a function of the agent's earlier actions.
using Adversary = std::function<int(std::span<const std::uint64_t> past)>;

/// zero, one, copy-last, parity, alternate, majority, minority,
/// xor-last-two, count-mod-3, hash.
Adversary even_odds_adversary(const std::string& name, std::uint64_t seed = 0);
const std::vector<std::string>& even_odds_adversary_names();

/// ceil(sqrt(N)) in exact integer arithmetic.
std::uint64_t even_odds_threshold(std::uint64_t rounds);
/// Fraction of the 2^N action strings that win: 2^-N * sum_{j >= (N + ceil(sqrt N))/2} C(N, j).
Rational even_odds_win_fraction(std::uint64_t rounds);
std::unique_ptr<Environment> even_odds_env(std::uint64_t rounds, Adversary adversary);

struct BruteForceResult {
  std::optional<std::vector<std::uint8_t>> winner;
  Rational win_fraction;
  std::uint64_t winners = 0;
};

/// Exhausts all 2^N bit strings against an environment whose messages are
/// empty. Refuses N > 24.
BruteForceResult brute_force_agent(const Environment& env, std::uint64_t rounds);

// ---------------------------------------------------------------------------
// Random walks

std::vector<double> stationary_distribution(const Graph& graph);
/// Distribution of a t-step simple random walk from s.
std::vector<double> exact_walk_distribution(const Graph& graph, std::uint32_t s, std::uint64_t t);
/// Smallest t with max_{s,v} |P^t(s,v) - pi(v)| <= pi_min / 2. Throws for
/// bipartite or disconnected graphs.
std::uint64_t mixing_time(const Graph& graph, std::uint64_t limit = 100000);

/// Which certified family the graph equals, if any.
std::optional<TransitiveKind> certify_transitive(const Graph& graph);
/// Exact P^t(u, v) for every v. Refuses graphs outside the certified families.
std::vector<Rational> walk_probabilities(const Graph& graph, std::uint32_t u, std::uint64_t t);
Rational return_probability(const Graph& graph, std::uint32_t u, std::uint64_t t);

/// Minimum number of edges across a bipartition, by brute force (n <= 20).
std::size_t exact_min_cut(const Graph& graph);

// ---------------------------------------------------------------------------
// Graph games

std::unique_ptr<Environment> graph_navigation_env(const Graph& graph, std::uint32_t s, std::uint32_t r,
                                                  std::uint64_t rounds, Relabel relabel = identity_relabel());

struct PenaltyTest {
  DiscreteDistribution dist;
  std::function<double(std::uint64_t)> test;
  std::string label;
};

/// Round i uses tests[i mod tests.size()]. Rejects tests with
/// sum_a P(a) T(a) >= 1 or negative values.
std::unique_ptr<Environment> penalty_tests_env(std::uint64_t rounds, std::vector<PenaltyTest> tests);
/// The documented computable test: P uniform on {1, 2}, T(a) = 1.9 [a even].
PenaltyTest parity_penalty_test();
/// Per-round minimiser of T over the support of P.
Agent greedy_penalty_agent(std::vector<PenaltyTest> tests);
double expected_round_penalty(const PenaltyTest& test);

std::unique_ptr<Environment> cover_time_env(const Graph& graph, std::uint32_t s, Relabel relabel = identity_relabel());
MeanEstimate estimate_cover_time(const Graph& graph, std::uint32_t s, std::uint64_t trials, std::uint64_t seed,
                                 const TrialOptions& options = {});

std::unique_ptr<Environment> karger_env(const Graph& graph, Relabel relabel = identity_relabel());

std::unique_ptr<Environment> vertex_transitive_env(const Graph& graph, std::uint32_t u, std::uint64_t k,
                                                   Relabel relabel = identity_relabel());

}  // namespace derand
