#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "derand/error.hpp"
#include "derand/games.hpp"

using namespace derand;

namespace {

// Wins on the first move.
class InstantWin final : public Environment {
  struct Ep final : Episode {
    StepResult start() override { return StepResult::next({0, 2, nullptr}); }
    StepResult step(std::uint64_t) override { return StepResult::win(); }
    std::unique_ptr<Episode> clone() const override { return std::make_unique<Ep>(*this); }
  };

 public:
  std::string name() const override { return "instant"; }
  GameMode mode() const override { return GameMode::WinNoHalt; }
  std::unique_ptr<Episode> begin() const override { return std::make_unique<Ep>(); }
};

Rational r(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

}  // namespace

TEST(Framework, InstantWin) {
  RngStream rng(1, 1);
  const auto t = play(uniform_agent(), InstantWin(), 10, rng);
  EXPECT_EQ(t.outcome, Outcome::Win);
  EXPECT_EQ(t.rounds.size(), 1u);
}

TEST(Framework, OutOfRangeActionRejected) {
  const std::vector<std::uint64_t> acts = {5};
  EXPECT_EQ(replay(InstantWin(), acts, 10).outcome, Outcome::Rejected);
}

TEST(Framework, ReplayReproducesPlay) {
  const auto g = petersen_graph();
  const auto env = graph_navigation_env(g, 0, 7, 12, seeded_relabel(4));
  for (std::uint64_t s = 0; s < 50; ++s) {
    RngStream rng(s, 0);
    const auto t = play(uniform_agent(), *env, 12, rng);
    const auto acts = t.actions();
    EXPECT_EQ(replay(*env, acts, 12), t);
  }
}

TEST(EvenOdds, SingleRound) {
  EXPECT_EQ(even_odds_win_fraction(1), r(1, 2));
  // Adversary 0, agent 0: e1 + a1 even, so the score drops to -1.
  const auto env = even_odds_env(1, even_odds_adversary("zero"));
  const std::vector<std::uint64_t> zero = {0}, one = {1};
  EXPECT_EQ(replay(*env, zero, 1).outcome, Outcome::Lose);
  EXPECT_EQ(replay(*env, one, 1).outcome, Outcome::Win);
}

TEST(EvenOdds, Thresholds) {
  EXPECT_EQ(even_odds_threshold(16), 4u);
  EXPECT_EQ(even_odds_threshold(4), 2u);
  EXPECT_EQ(even_odds_threshold(5), 3u);
  EXPECT_EQ(even_odds_threshold(1), 1u);
}

TEST(EvenOdds, BinomialTail) {
  EXPECT_EQ(even_odds_win_fraction(16), r(14893, 65536));
  EXPECT_EQ(even_odds_win_fraction(9), r(65, 256));
  EXPECT_EQ(even_odds_win_fraction(4), r(5, 16));
}

// The winning fraction does not depend on the adversary.
TEST(EvenOdds, AdversaryIndependence) {
  ASSERT_GE(even_odds_adversary_names().size(), 10u);
  for (std::uint64_t n : {4u, 9u, 12u}) {
    for (const auto& name : even_odds_adversary_names()) {
      const auto env = even_odds_env(n, even_odds_adversary(name, 3));
      const auto bf = brute_force_agent(*env, n);
      EXPECT_EQ(bf.win_fraction, even_odds_win_fraction(n)) << name << " N=" << n;
      ASSERT_TRUE(bf.winner.has_value());
      std::vector<std::uint64_t> acts(bf.winner->begin(), bf.winner->end());
      EXPECT_EQ(replay(*env, acts, n).outcome, Outcome::Win);
    }
  }
}

TEST(EvenOdds, ConstantAdversaryAllOnesWins) {
  const auto env = even_odds_env(4, even_odds_adversary("zero"));
  const std::vector<std::uint64_t> ones = {1, 1, 1, 1};
  EXPECT_EQ(replay(*env, ones, 4).outcome, Outcome::Win);
  EXPECT_THROW(brute_force_agent(*even_odds_env(25, even_odds_adversary("zero")), 25), Refusal);
}

TEST(Walks, TriangleMixesToUniform) {
  const auto d = exact_walk_distribution(cycle_graph(3), 0, 60);
  for (double p : d) EXPECT_NEAR(p, 1.0 / 3, 1e-12);
}

TEST(Walks, DistributionsSumToOne) {
  const auto g = petersen_graph();
  for (std::uint64_t t : {0u, 1u, 5u, 17u}) {
    const auto d = exact_walk_distribution(g, 3, t);
    EXPECT_NEAR(std::accumulate(d.begin(), d.end(), 0.0), 1.0, 1e-12);
  }
  const auto pi = stationary_distribution(g);
  for (double p : pi) EXPECT_NEAR(p, 0.1, 1e-15);
}

TEST(Walks, ReturnProbabilities) {
  EXPECT_EQ(return_probability(cycle_graph(4), 0, 2), r(1, 2));
  EXPECT_EQ(return_probability(gen_hypercube(3), 0, 2), r(1, 3));
  EXPECT_EQ(return_probability(cycle_graph(6), 0, 4), r(3, 8));
  EXPECT_THROW(return_probability(petersen_graph(), 0, 2), Refusal);
}

TEST(Walks, ReturnDominates) {
  for (const auto& g : {cycle_graph(4), cycle_graph(6), gen_hypercube(3), complete_graph(5), cycle_graph(7)}) {
    const Rational one_over_n(BigInt(1), BigInt(g.num_vertices()));
    for (std::uint64_t k = 1; k <= 4; ++k) {
      const auto p = walk_probabilities(g, 0, 2 * k);
      Rational total(0);
      for (const auto& x : p) {
        EXPECT_GE(p[0], x);
        total += x;
      }
      EXPECT_EQ(total, Rational(1));
      EXPECT_GE(p[0], one_over_n);
    }
  }
}

TEST(Walks, MixingTime) {
  EXPECT_THROW(mixing_time(cycle_graph(4)), InstanceError);
  const auto t = mixing_time(petersen_graph());
  const auto d = exact_walk_distribution(petersen_graph(), 0, t);
  for (double p : d) EXPECT_LE(std::abs(p - 0.1), 0.05 + 1e-12);
}

TEST(GraphNav, RejectsBipartite) {
  EXPECT_THROW(graph_navigation_env(path_graph(2), 0, 1, 4), InstanceError);
}

TEST(GraphNav, UniformAgentBeatsThreshold) {
  const auto g = petersen_graph();
  const auto t = mixing_time(g);
  const auto env = graph_navigation_env(g, 0, 9, t, seeded_relabel(1));
  const auto est = estimate_win_probability(*env, uniform_agent(), t, 20000, 5);
  EXPECT_NE(verdict_against_bound(est, 1.0 / (2 * 15)).status, VerdictStatus::Refuted);
  EXPECT_NEAR(est.p_hat, exact_walk_distribution(g, 0, t)[9], 0.01);
  const auto found = search_winning_actions(*env, t);
  ASSERT_TRUE(found.winner.has_value());
  EXPECT_EQ(replay(*env, *found.winner, t).outcome, Outcome::Win);
}

TEST(Penalty, ZeroTestsGiveZero) {
  PenaltyTest zero{DiscreteDistribution::uniform(1, 2), [](std::uint64_t) { return 0.0; }, "zero"};
  const auto env = penalty_tests_env(3, {zero});
  RngStream rng(0, 0);
  const auto t = play(sampling_agent(), *env, 10, rng);
  EXPECT_EQ(t.outcome, Outcome::Halt);
  EXPECT_EQ(t.penalty, 0.0);
}

TEST(Penalty, ParityTest) {
  const auto p = parity_penalty_test();
  EXPECT_DOUBLE_EQ(expected_round_penalty(p), 0.95);
  const auto env = penalty_tests_env(50, {p});
  const auto m = estimate_penalty(*env, sampling_agent(), 51, 20000, 3);
  EXPECT_LT(m.mean, 50.0);
  EXPECT_NEAR(m.mean, 47.5, 0.3);
  RngStream rng(0, 0);
  EXPECT_EQ(play(greedy_penalty_agent({p}), *env, 51, rng).penalty, 0.0);
}

TEST(Penalty, RejectsBadTests) {
  PenaltyTest heavy{DiscreteDistribution::uniform(1, 2), [](std::uint64_t) { return 1.0; }, "heavy"};
  EXPECT_THROW(penalty_tests_env(3, {heavy}), InstanceError);
  PenaltyTest negative{DiscreteDistribution::uniform(1, 2), [](std::uint64_t a) { return a == 1 ? -1.0 : 0.5; }, "neg"};
  EXPECT_THROW(penalty_tests_env(3, {negative}), InstanceError);
}

TEST(CoverTime, SmallGraphs) {
  EXPECT_EQ(estimate_cover_time(Graph(1, {}), 0, 10, 1).mean, 0.0);
  EXPECT_NEAR(estimate_cover_time(cycle_graph(6), 0, 40000, 1).mean, 15.0, 0.3);
  EXPECT_NEAR(estimate_cover_time(complete_graph(4), 0, 40000, 2).mean, 5.5, 0.1);
}

TEST(Karger, TriangleAlwaysWins) {
  const auto env = karger_env(cycle_graph(3));
  const auto est = estimate_win_probability(*env, uniform_agent(), 3, 2000, 1);
  EXPECT_EQ(est.p_hat, 1.0);
}

TEST(Karger, MinCuts) {
  EXPECT_EQ(exact_min_cut(cycle_graph(4)), 2u);
  EXPECT_EQ(exact_min_cut(complete_graph(5)), 4u);
  EXPECT_EQ(exact_min_cut(petersen_graph()), 3u);
  EXPECT_EQ(exact_min_cut(Graph(3, {{0, 1}})), 0u);
}

// Two triangles joined by one bridge: Karger must keep the bridge and all
// contractions happen inside the triangles, with parallel edges counted.
TEST(Karger, BridgeGraph) {
  const Graph g(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  const auto env = karger_env(g);
  const auto est = estimate_win_probability(*env, uniform_agent(), 6, 50000, 2);
  EXPECT_NE(verdict_against_bound(est, 2.0 / 30).status, VerdictStatus::Refuted);
  const auto found = search_winning_actions(*env, 6);
  ASSERT_TRUE(found.winner.has_value());
  EXPECT_EQ(replay(*env, *found.winner, 6).outcome, Outcome::Win);
}

TEST(VertexTransitive, RefusesUncertified) {
  EXPECT_THROW(vertex_transitive_env(petersen_graph(), 0, 1), Refusal);
  const auto env = vertex_transitive_env(cycle_graph(4), 0, 1);
  const auto est = estimate_win_probability(*env, uniform_agent(), 3, 20000, 1);
  EXPECT_NEAR(est.p_hat, 0.5, 0.015);
}

TEST(Relabel, SeededIsPermutationAndDeterministic) {
  const auto rl = seeded_relabel(8);
  const std::vector<std::uint64_t> past = {1, 0, 2};
  const auto a = rl(4, 3, past, 6);
  EXPECT_EQ(a, rl(4, 3, past, 6));
  auto s = a;
  std::sort(s.begin(), s.end());
  for (std::uint32_t i = 0; i < 6; ++i) EXPECT_EQ(s[i], i);
}
