#include "derand/games.hpp"

#include <algorithm>
#include <cmath>

#include "derand/error.hpp"

namespace derand {

std::string to_string(const Rational& r) {
  return r.numerator().str() + "/" + r.denominator().str();
}

std::string to_string(GameMode mode) {
  return mode == GameMode::WinNoHalt ? "win-no-halt" : "penalty";
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Win: return "WIN";
    case Outcome::Lose: return "LOSE";
    case Outcome::Halt: return "HALT";
    case Outcome::Timeout: return "TIMEOUT";
    case Outcome::Rejected: return "REJECTED";
  }
  return "?";
}

bool Observation::operator==(const Observation& other) const {
  if (value != other.value || actions != other.actions) return false;
  if (!dist || !other.dist) return !dist && !other.dist;
  return dist->values == other.dist->values && dist->probs == other.dist->probs;
}

std::vector<std::uint64_t> Transcript::actions() const {
  std::vector<std::uint64_t> out;
  out.reserve(rounds.size());
  for (const auto& r : rounds) out.push_back(r.action);
  return out;
}

Agent uniform_agent() {
  return [](const std::vector<Round>&, const Observation& obs, RngStream& rng) -> std::uint64_t {
    if (obs.actions == 0) throw InvalidArgument("uniform agent needs a finite action range");
    return rng.below(obs.actions);
  };
}

Agent sampling_agent() {
  return [](const std::vector<Round>&, const Observation& obs, RngStream& rng) -> std::uint64_t {
    if (!obs.dist) throw InvalidArgument("sampling agent needs a distribution in the observation");
    return obs.dist->values[rng.discrete(obs.dist->probs)];
  };
}

Agent scripted_agent(std::vector<std::uint64_t> actions) {
  return [actions = std::move(actions)](const std::vector<Round>& history, const Observation&, RngStream&) {
    return history.size() < actions.size() ? actions[history.size()] : std::uint64_t{0};
  };
}

namespace {

// Shared loop; `choose` produces the next action.
template <class Choose>
Transcript run_game(const Environment& env, std::uint64_t max_rounds, Choose choose) {
  if (max_rounds == 0) throw InvalidArgument("max_rounds must be at least 1");
  Transcript t;
  auto episode = env.begin();
  StepResult r = episode->start();
  while (true) {
    t.penalty += r.penalty;
    if (!t.rounds.empty()) t.rounds.back().penalty = r.penalty;
    switch (r.kind) {
      case StepResult::Kind::Win: t.outcome = Outcome::Win; return t;
      case StepResult::Kind::Lose: t.outcome = Outcome::Lose; return t;
      case StepResult::Kind::Halt: t.outcome = Outcome::Halt; return t;
      case StepResult::Kind::Reject:
        t.outcome = Outcome::Rejected;
        t.note = r.note;
        return t;
      case StepResult::Kind::Continue: break;
    }
    if (t.rounds.size() == max_rounds) {
      t.outcome = Outcome::Timeout;
      return t;
    }
    const std::uint64_t a = choose(t.rounds, r.observation);
    t.rounds.push_back({r.observation, a, 0.0});
    if (r.observation.actions != 0 && a >= r.observation.actions)
      r = StepResult::reject("action " + std::to_string(a) + " outside [0, " +
                             std::to_string(r.observation.actions) + ")");
    else
      r = episode->step(a);
  }
}

}  // namespace

Transcript play(const Agent& agent, const Environment& env, std::uint64_t max_rounds, RngStream& rng) {
  return run_game(env, max_rounds, [&](const std::vector<Round>& h, const Observation& o) { return agent(h, o, rng); });
}

Transcript replay(const Environment& env, std::span<const std::uint64_t> actions, std::uint64_t max_rounds) {
  return run_game(env, max_rounds, [&](const std::vector<Round>& h, const Observation&) {
    return h.size() < actions.size() ? actions[h.size()] : std::uint64_t{0};
  });
}

Estimate estimate_win_probability(const Environment& env, const Agent& agent, std::uint64_t max_rounds,
                                  std::uint64_t trials, std::uint64_t seed, const TrialOptions& options) {
  return run_trials(
      [&](RngStream& rng) { return play(agent, env, max_rounds, rng).outcome == Outcome::Win; }, trials, seed,
      options);
}

MeanEstimate estimate_penalty(const Environment& env, const Agent& agent, std::uint64_t max_rounds,
                              std::uint64_t trials, std::uint64_t seed, const TrialOptions& options) {
  return run_samples(
      [&](RngStream& rng) {
        const auto t = play(agent, env, max_rounds, rng);
        if (t.outcome != Outcome::Halt)
          throw Error(env.name() + ": playout ended with " + to_string(t.outcome) + " instead of halting");
        return t.penalty;
      },
      trials, seed, options);
}

SearchResult search_winning_actions(const Environment& env, std::uint64_t max_rounds, std::uint64_t node_cap) {
  SearchResult out;
  std::vector<std::uint64_t> path;
  // Returns true once a winner has been stored or the cap is hit.
  std::function<bool(const Episode&, const StepResult&)> dfs = [&](const Episode& ep, const StepResult& r) {
    if (++out.nodes > node_cap) {
      out.capped = true;
      return true;
    }
    if (r.kind == StepResult::Kind::Win) {
      out.winner = path;
      return true;
    }
    if (r.kind != StepResult::Kind::Continue || path.size() == max_rounds) return false;
    if (r.observation.actions == 0) throw InvalidArgument("search needs finite action ranges");
    for (std::uint64_t a = 0; a < r.observation.actions; ++a) {
      auto child = ep.clone();
      const auto next = child->step(a);
      path.push_back(a);
      if (dfs(*child, next)) return true;
      path.pop_back();
    }
    return false;
  };
  auto root = env.begin();
  const auto first = root->start();
  dfs(*root, first);
  if (out.capped) out.winner.reset();
  return out;
}

Relabel identity_relabel() {
  return [](std::uint64_t, std::uint32_t, std::span<const std::uint64_t>, std::size_t choices) {
    std::vector<std::uint32_t> p(choices);
    for (std::size_t i = 0; i < choices; ++i) p[i] = static_cast<std::uint32_t>(i);
    return p;
  };
}

Relabel seeded_relabel(std::uint64_t seed) {
  return [seed](std::uint64_t round, std::uint32_t vertex, std::span<const std::uint64_t> past, std::size_t choices) {
    std::uint64_t h = mix64(seed ^ mix64(round));
    for (auto a : past) h = mix64(h ^ a);
    RngStream rng(h, vertex);
    return rng.permutation(choices);
  };
}

}  // namespace derand
