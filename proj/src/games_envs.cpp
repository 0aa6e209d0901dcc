// The six concrete environments.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "derand/error.hpp"
#include "derand/games.hpp"

namespace derand {

namespace {

std::vector<std::uint32_t> checked_order(const Relabel& relabel, std::uint64_t round, std::uint32_t vertex,
                                         std::span<const std::uint64_t> past, std::size_t choices) {
  auto order = relabel(round, vertex, past, choices);
  if (order.size() != choices) throw InstanceError("relabel must return a permutation of the choices");
  return order;
}

void require_vertex(const Graph& g, std::uint32_t v, const char* what) {
  if (v >= g.num_vertices()) throw InstanceError(std::string(what) + " vertex out of range");
}

// ---------------------------------------------------------------------------

class EvenOddsEpisode final : public Episode {
 public:
  EvenOddsEpisode(std::uint64_t rounds, const Adversary* adversary)
      : rounds_(rounds), threshold_(static_cast<std::int64_t>(even_odds_threshold(rounds))), adversary_(adversary) {}

  StepResult start() override { return StepResult::next({0, 2, nullptr}); }

  StepResult step(std::uint64_t action) override {
    const int e = (*adversary_)(past_) & 1;
    past_.push_back(action);
    score_ += (static_cast<int>(action & 1) ^ e) ? 1 : -1;
    if (past_.size() < rounds_) return StepResult::next({0, 2, nullptr});
    return score_ >= threshold_ ? StepResult::win() : StepResult::lose();
  }

  std::unique_ptr<Episode> clone() const override { return std::make_unique<EvenOddsEpisode>(*this); }

 private:
  std::uint64_t rounds_;
  std::int64_t threshold_;
  const Adversary* adversary_;
  std::vector<std::uint64_t> past_;
  std::int64_t score_ = 0;
};

class EvenOddsEnv final : public Environment {
 public:
  EvenOddsEnv(std::uint64_t rounds, Adversary adversary) : rounds_(rounds), adversary_(std::move(adversary)) {
    if (rounds == 0) throw InstanceError("even-odds needs at least one round");
    if (!adversary_) throw InstanceError("even-odds needs an adversary");
  }
  std::string name() const override { return "even-odds"; }
  GameMode mode() const override { return GameMode::WinNoHalt; }
  std::unique_ptr<Episode> begin() const override { return std::make_unique<EvenOddsEpisode>(rounds_, &adversary_); }

 private:
  std::uint64_t rounds_;
  Adversary adversary_;
};

// ---------------------------------------------------------------------------
// Walk-style games share a position, a round counter and the action history.

struct WalkState {
  std::uint32_t vertex = 0;
  std::uint64_t round = 0;
  std::vector<std::uint64_t> past;

  Observation observe(const Graph& g) const {
    const auto d = g.degree(vertex);
    return {static_cast<std::int64_t>(d), d, nullptr};
  }

  void move(const Graph& g, const Relabel& relabel, std::uint64_t action) {
    const auto nb = g.neighbors(vertex);
    const auto order = checked_order(relabel, round + 1, vertex, past, nb.size());
    vertex = nb[order[action]];
    past.push_back(action);
    ++round;
  }
};

class GraphNavEpisode final : public Episode {
 public:
  GraphNavEpisode(const Graph* g, const Relabel* relabel, std::uint32_t s, std::uint32_t r, std::uint64_t rounds)
      : g_(g), relabel_(relabel), r_(r), rounds_(rounds) {
    state_.vertex = s;
  }
  StepResult start() override { return rounds_ == 0 ? verdict() : StepResult::next(state_.observe(*g_)); }
  StepResult step(std::uint64_t action) override {
    state_.move(*g_, *relabel_, action);
    return state_.round == rounds_ ? verdict() : StepResult::next(state_.observe(*g_));
  }
  std::unique_ptr<Episode> clone() const override { return std::make_unique<GraphNavEpisode>(*this); }

 private:
  StepResult verdict() const { return state_.vertex == r_ ? StepResult::win() : StepResult::lose(); }
  const Graph* g_;
  const Relabel* relabel_;
  std::uint32_t r_;
  std::uint64_t rounds_;
  WalkState state_;
};

class GraphNavEnv final : public Environment {
 public:
  GraphNavEnv(Graph g, std::uint32_t s, std::uint32_t r, std::uint64_t rounds, Relabel relabel)
      : g_(std::move(g)), s_(s), r_(r), rounds_(rounds), relabel_(std::move(relabel)) {
    require_vertex(g_, s, "start");
    require_vertex(g_, r, "goal");
    if (!g_.connected()) throw InstanceError("graph-nav needs a connected graph");
    if (g_.bipartite()) throw InstanceError("graph-nav needs a non-bipartite graph");
  }
  std::string name() const override { return "graph-nav"; }
  GameMode mode() const override { return GameMode::WinNoHalt; }
  std::unique_ptr<Episode> begin() const override {
    return std::make_unique<GraphNavEpisode>(&g_, &relabel_, s_, r_, rounds_);
  }

 private:
  Graph g_;
  std::uint32_t s_, r_;
  std::uint64_t rounds_;
  Relabel relabel_;
};

// ---------------------------------------------------------------------------

class PenaltyEpisode final : public Episode {
 public:
  PenaltyEpisode(std::uint64_t rounds, const std::vector<PenaltyTest>* tests,
                 const std::vector<std::shared_ptr<const DiscreteDistribution>>* dists)
      : rounds_(rounds), tests_(tests), dists_(dists) {}
  StepResult start() override { return rounds_ == 0 ? StepResult::halt() : StepResult::next(observe()); }
  StepResult step(std::uint64_t action) override {
    const double penalty = (*tests_)[round_ % tests_->size()].test(action);
    ++round_;
    if (round_ == rounds_) return StepResult::halt(penalty);
    return StepResult::next(observe(), penalty);
  }
  std::unique_ptr<Episode> clone() const override { return std::make_unique<PenaltyEpisode>(*this); }

 private:
  Observation observe() const {
    return {static_cast<std::int64_t>(round_), 0, (*dists_)[round_ % dists_->size()]};
  }
  std::uint64_t rounds_;
  const std::vector<PenaltyTest>* tests_;
  const std::vector<std::shared_ptr<const DiscreteDistribution>>* dists_;
  std::uint64_t round_ = 0;
};

class PenaltyEnv final : public Environment {
 public:
  PenaltyEnv(std::uint64_t rounds, std::vector<PenaltyTest> tests) : rounds_(rounds), tests_(std::move(tests)) {
    if (tests_.empty()) throw InstanceError("penalty-tests needs at least one test");
    for (std::size_t i = 0; i < tests_.size(); ++i) {
      tests_[i].dist.validate();
      for (auto a : tests_[i].dist.values)
        if (!(tests_[i].test(a) >= 0.0))
          throw InstanceError("test " + std::to_string(i) + " charges a negative penalty");
      const double e = expected_round_penalty(tests_[i]);
      if (!(e < 1.0))
        throw InstanceError("test " + std::to_string(i) + " has expected penalty " + std::to_string(e) + " >= 1");
      dists_.push_back(std::make_shared<const DiscreteDistribution>(tests_[i].dist));
    }
  }
  std::string name() const override { return "penalty-tests"; }
  GameMode mode() const override { return GameMode::Penalty; }
  std::unique_ptr<Episode> begin() const override { return std::make_unique<PenaltyEpisode>(rounds_, &tests_, &dists_); }

 private:
  std::uint64_t rounds_;
  std::vector<PenaltyTest> tests_;
  std::vector<std::shared_ptr<const DiscreteDistribution>> dists_;
};

// ---------------------------------------------------------------------------

class CoverEpisode final : public Episode {
 public:
  CoverEpisode(const Graph* g, const Relabel* relabel, std::uint32_t s)
      : g_(g), relabel_(relabel), visited_(g->num_vertices(), 0) {
    state_.vertex = s;
    visited_[s] = 1;
    remaining_ = g->num_vertices() - 1;
  }
  StepResult start() override { return remaining_ == 0 ? StepResult::halt() : StepResult::next(state_.observe(*g_)); }
  StepResult step(std::uint64_t action) override {
    state_.move(*g_, *relabel_, action);
    if (!visited_[state_.vertex]) {
      visited_[state_.vertex] = 1;
      --remaining_;
    }
    return remaining_ == 0 ? StepResult::halt(1.0) : StepResult::next(state_.observe(*g_), 1.0);
  }
  std::unique_ptr<Episode> clone() const override { return std::make_unique<CoverEpisode>(*this); }

 private:
  const Graph* g_;
  const Relabel* relabel_;
  WalkState state_;
  std::vector<std::uint8_t> visited_;
  std::size_t remaining_ = 0;
};

class CoverEnv final : public Environment {
 public:
  CoverEnv(Graph g, std::uint32_t s, Relabel relabel) : g_(std::move(g)), s_(s), relabel_(std::move(relabel)) {
    require_vertex(g_, s, "start");
    if (!g_.connected()) throw InstanceError("cover-time needs a connected graph");
  }
  std::string name() const override { return "cover-time"; }
  GameMode mode() const override { return GameMode::Penalty; }
  std::unique_ptr<Episode> begin() const override { return std::make_unique<CoverEpisode>(&g_, &relabel_, s_); }

 private:
  Graph g_;
  std::uint32_t s_;
  Relabel relabel_;
};

// ---------------------------------------------------------------------------
// Karger contraction. Parallel edges are kept, loops dropped.

class KargerEpisode final : public Episode {
 public:
  KargerEpisode(const Graph& g, const Relabel* relabel, std::size_t min_cut)
      : relabel_(relabel), min_cut_(min_cut), groups_(g.num_vertices()) {
    for (const auto& e : g.edges()) edges_.push_back({e.u, e.v});
  }
  StepResult start() override { return observe(); }
  StepResult step(std::uint64_t action) override {
    const auto order = checked_order(*relabel_, past_.size() + 1, 0, past_, edges_.size());
    const auto [keep, gone] = edges_[order[action]];
    past_.push_back(action);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> next;
    next.reserve(edges_.size());
    for (auto [u, v] : edges_) {
      if (u == gone) u = keep;
      if (v == gone) v = keep;
      if (u != v) next.push_back({u, v});
    }
    edges_ = std::move(next);
    --groups_;
    return observe();
  }
  std::unique_ptr<Episode> clone() const override { return std::make_unique<KargerEpisode>(*this); }

 private:
  StepResult observe() const {
    if (groups_ <= 2) return edges_.size() == min_cut_ ? StepResult::win() : StepResult::lose();
    return StepResult::next({static_cast<std::int64_t>(edges_.size()), edges_.size(), nullptr});
  }
  const Relabel* relabel_;
  std::size_t min_cut_;
  std::size_t groups_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<std::uint64_t> past_;
};

class KargerEnv final : public Environment {
 public:
  KargerEnv(Graph g, Relabel relabel) : g_(std::move(g)), relabel_(std::move(relabel)) {
    if (g_.num_vertices() < 2) throw InstanceError("min-cut needs at least two vertices");
    if (!g_.connected()) throw InstanceError("min-cut needs a connected graph");
    min_cut_ = exact_min_cut(g_);
  }
  std::string name() const override { return "min-cut"; }
  GameMode mode() const override { return GameMode::WinNoHalt; }
  std::unique_ptr<Episode> begin() const override { return std::make_unique<KargerEpisode>(g_, &relabel_, min_cut_); }

 private:
  Graph g_;
  Relabel relabel_;
  std::size_t min_cut_ = 0;
};

// ---------------------------------------------------------------------------

class TransitiveEnv final : public Environment {
 public:
  TransitiveEnv(Graph g, std::uint32_t u, std::uint64_t k, Relabel relabel)
      : g_(std::move(g)), u_(u), rounds_(2 * k), relabel_(std::move(relabel)) {
    if (!certify_transitive(g_)) throw Refusal("graph is not one of the certified vertex-transitive families");
    require_vertex(g_, u, "start");
  }
  std::string name() const override { return "vertex-transitive"; }
  GameMode mode() const override { return GameMode::WinNoHalt; }
  std::unique_ptr<Episode> begin() const override {
    return std::make_unique<GraphNavEpisode>(&g_, &relabel_, u_, u_, rounds_);
  }

 private:
  Graph g_;
  std::uint32_t u_;
  std::uint64_t rounds_;
  Relabel relabel_;
};

}  // namespace

// ---------------------------------------------------------------------------

std::uint64_t even_odds_threshold(std::uint64_t rounds) {
  auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(rounds)));
  while (s * s > rounds) --s;
  while ((s + 1) * (s + 1) <= rounds) ++s;
  return s * s == rounds ? s : s + 1;
}

Rational even_odds_win_fraction(std::uint64_t rounds) {
  if (rounds == 0) throw InvalidArgument("even-odds needs at least one round");
  const std::uint64_t need = (rounds + even_odds_threshold(rounds) + 1) / 2;
  BigInt c = 1, total = 0;
  for (std::uint64_t j = 0; j <= rounds; ++j) {
    if (j >= need) total += c;
    c = c * (rounds - j) / (j + 1);
  }
  return Rational(total, BigInt(1) << rounds);
}

std::unique_ptr<Environment> even_odds_env(std::uint64_t rounds, Adversary adversary) {
  return std::make_unique<EvenOddsEnv>(rounds, std::move(adversary));
}

const std::vector<std::string>& even_odds_adversary_names() {
  static const std::vector<std::string> names = {"zero",     "one",      "copy-last",    "parity",      "alternate",
                                                 "majority", "minority", "xor-last-two", "count-mod-3", "hash"};
  return names;
}

Adversary even_odds_adversary(const std::string& name, std::uint64_t seed) {
  using Past = std::span<const std::uint64_t>;
  auto ones = [](Past p) { return static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [](auto a) { return a & 1; })); };
  if (name == "zero") return [](Past) { return 0; };
  if (name == "one") return [](Past) { return 1; };
  if (name == "copy-last") return [](Past p) { return p.empty() ? 0 : static_cast<int>(p.back() & 1); };
  if (name == "parity") return [ones](Past p) { return static_cast<int>(ones(p) & 1); };
  if (name == "alternate") return [](Past p) { return static_cast<int>(p.size() & 1); };
  if (name == "majority") return [ones](Past p) { return 2 * ones(p) > p.size() ? 1 : 0; };
  if (name == "minority") return [ones](Past p) { return 2 * ones(p) > p.size() ? 0 : 1; };
  if (name == "xor-last-two")
    return [](Past p) { return p.size() < 2 ? 0 : static_cast<int>((p[p.size() - 1] ^ p[p.size() - 2]) & 1); };
  if (name == "count-mod-3") return [ones](Past p) { return ones(p) % 3 == 0 ? 1 : 0; };
  if (name == "hash")
    return [seed](Past p) {
      std::uint64_t h = mix64(seed ^ p.size());
      for (auto a : p) h = mix64(h ^ a);
      return static_cast<int>(h & 1);
    };
  throw InvalidArgument("unknown adversary '" + name + "'");
}

BruteForceResult brute_force_agent(const Environment& env, std::uint64_t rounds) {
  if (rounds > 24) throw Refusal("brute-force agent search limited to 24 rounds");
  BruteForceResult out;
  std::vector<std::uint8_t> path;
  BigInt wins = 0;
  std::function<void(const Episode&, const StepResult&)> dfs = [&](const Episode& ep, const StepResult& r) {
    if (r.kind == StepResult::Kind::Win) {
      // A game that ends early leaves the remaining bits free.
      const auto free_bits = rounds - path.size();
      wins += BigInt(1) << free_bits;
      out.winners += std::uint64_t{1} << free_bits;
      if (!out.winner) {
        out.winner = path;
        out.winner->resize(rounds, 0);
      }
      return;
    }
    if (r.kind != StepResult::Kind::Continue || path.size() == rounds) return;
    if (r.observation.value != 0 || r.observation.actions != 2 || r.observation.dist)
      throw InvalidArgument("brute-force search needs empty messages and bit actions");
    for (std::uint8_t a = 0; a < 2; ++a) {
      auto child = ep.clone();
      const auto next = child->step(a);
      path.push_back(a);
      dfs(*child, next);
      path.pop_back();
    }
  };
  auto root = env.begin();
  const auto first = root->start();
  dfs(*root, first);
  out.win_fraction = Rational(wins, BigInt(1) << rounds);
  return out;
}

std::unique_ptr<Environment> graph_navigation_env(const Graph& graph, std::uint32_t s, std::uint32_t r,
                                                  std::uint64_t rounds, Relabel relabel) {
  return std::make_unique<GraphNavEnv>(graph, s, r, rounds, std::move(relabel));
}

double expected_round_penalty(const PenaltyTest& test) {
  double e = 0.0;
  for (std::size_t i = 0; i < test.dist.values.size(); ++i)
    if (test.dist.probs[i] > 0.0) e += test.dist.probs[i] * test.test(test.dist.values[i]);
  return e;
}

PenaltyTest parity_penalty_test() {
  return {DiscreteDistribution::uniform(1, 2), [](std::uint64_t a) { return a % 2 == 0 ? 1.9 : 0.0; },
          "P uniform on {1,2}, T(a) = 1.9 [a even]"};
}

std::unique_ptr<Environment> penalty_tests_env(std::uint64_t rounds, std::vector<PenaltyTest> tests) {
  return std::make_unique<PenaltyEnv>(rounds, std::move(tests));
}

Agent greedy_penalty_agent(std::vector<PenaltyTest> tests) {
  if (tests.empty()) throw InvalidArgument("greedy agent needs the test list");
  std::vector<std::uint64_t> choice;
  for (const auto& t : tests) {
    std::uint64_t best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.dist.values.size(); ++i) {
      if (t.dist.probs[i] <= 0.0) continue;
      const double cost = t.test(t.dist.values[i]);
      if (cost < best_cost) {
        best_cost = cost;
        best = t.dist.values[i];
      }
    }
    choice.push_back(best);
  }
  return [choice](const std::vector<Round>& history, const Observation&, RngStream&) {
    return choice[history.size() % choice.size()];
  };
}

std::unique_ptr<Environment> cover_time_env(const Graph& graph, std::uint32_t s, Relabel relabel) {
  return std::make_unique<CoverEnv>(graph, s, std::move(relabel));
}

MeanEstimate estimate_cover_time(const Graph& graph, std::uint32_t s, std::uint64_t trials, std::uint64_t seed,
                                 const TrialOptions& options) {
  const auto env = cover_time_env(graph, s);
  const double n = static_cast<double>(graph.num_vertices());
  const double m = static_cast<double>(graph.num_edges());
  // 2m(n-1) bounds the expected cover time; the cap sits far in the tail.
  const auto cap = static_cast<std::uint64_t>(std::max(1e6, 1000.0 * 2.0 * m * n));
  return estimate_penalty(*env, uniform_agent(), cap, trials, seed, options);
}

std::unique_ptr<Environment> karger_env(const Graph& graph, Relabel relabel) {
  return std::make_unique<KargerEnv>(graph, std::move(relabel));
}

std::unique_ptr<Environment> vertex_transitive_env(const Graph& graph, std::uint32_t u, std::uint64_t k,
                                                   Relabel relabel) {
  return std::make_unique<TransitiveEnv>(graph, u, k, std::move(relabel));
}

}  // namespace derand
