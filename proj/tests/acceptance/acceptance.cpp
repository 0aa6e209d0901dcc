// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "derand/app.hpp"
#include "derand/constructions.hpp"
#include "derand/games.hpp"
#include "derand/routing.hpp"
#include "derand/solve.hpp"

using namespace derand;
using nlohmann::json;

namespace {

// Pinned tolerances and budgets.
constexpr double kConfidence = 0.99;
constexpr std::uint64_t kTrials = 100000;
constexpr double kSlack = 1e-12;
constexpr double kExactSuiteSeconds = 1.0;
constexpr double kMonteCarloSeconds = 60.0;
constexpr double kRoutingSeconds = 30.0;
constexpr std::uint64_t kRoutingTrials = 10000;
constexpr double kRoutingClaim = 1.0 - 1.0 / 256;
constexpr std::size_t kMoserTardosInstances = 100;
constexpr double kEvenOddsSeconds = 10.0;
constexpr double kCoverTolerance = 0.05;
constexpr std::uint64_t kPenaltyRounds = 50;
constexpr std::uint64_t kSeed = 20240601;

struct Check {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// 1. Exact oracles on enumerable instances.
Check exact_oracles() {
  Check out;
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    std::string label;
    Construction c;
    double exact;
  };
  const std::vector<Case> cases = {
      {"maxcut triangle", build_max_cut(cycle_graph(3)), 0.75},
      {"max3sat single clause", build_max_3sat(parse_dimacs("p cnf 3 1\n1 2 3 0\n")), 7.0 / 8},
      {"coloring single edge", build_graph_coloring(path_graph(2), 2), 0.5},
      {"hyper-lll one 4-edge", build_hypergraph_2color_lll(Hypergraph(4, {{0, 1, 2, 3}})), 0.875},
      {"hyper-union one 2-edge", build_hypergraph_color_union(Hypergraph(2, {{0, 1}})), 0.5},
      {"ksat two disjoint", build_ksat(gen_random_kcnf(6, 2, 3, 0, 1), 3), 49.0 / 64},
      {"superset n_u=3 m=1 |S|=1", build_super_set(SetFamily(3, {5}), 1), 0.5},
      {"superset n_u=4 m=1 |S|=3", build_super_set(SetFamily(4, {1, 6, 11}), 1), 0.1},
      {"balance-vectors duplicate", build_balance_unit_vectors(UnitVectors({{1.0, 0.0}, {1.0, 0.0}})), 1.0},
      {"indepset edgeless n=4", build_independent_set(Graph(4, {})), 11.0 / 16},
      {"funcmin square on 1..4", build_function_min(DiscreteDistribution::uniform(1, 4),
                                                    {[](std::uint64_t a) { return static_cast<double>(a * a); }}),
       0.75},
  };
  for (const auto& k : cases) {
    const double got = exact_good_fraction(k.c);
    if (!k.c.premise.ok) out.fail(k.label + " premise: " + k.c.premise.diagnostic);
    if (std::abs(got - k.exact) > 1e-9) out.fail(k.label + " exact " + fmt(got) + " != " + fmt(k.exact));
    if (got + kSlack < k.c.claimed_prob) out.fail(k.label + " exact " + fmt(got) + " < claim " + fmt(k.c.claimed_prob));
  }
  const double secs = seconds_since(t0);
  if (secs > kExactSuiteSeconds) out.fail("took " + fmt(secs) + " s");
  if (out.pass) out.detail = std::to_string(cases.size()) + " instances, " + fmt(secs) + " s";
  return out;
}

// Premise-satisfying corpus for all sixteen constructions, as CLI configs.
std::vector<json> construction_corpus() {
  return {
      {{"name", "ksat"}, {"gen", "kcnf:n=6,m=2,k=3,max_int=0"}},
      {{"name", "hyper-union"}, {"gen", "hypergraph:n=12,m=8,k=3,max_int=8"}},
      {{"name", "hyper-lll"}, {"gen", "hypergraph:n=8,m=2,k=4,max_int=0"}},
      {{"name", "cycles"}, {"gen", "complete31"}, {"k", 30}},
      {{"name", "frugal"}, {"gen", "regular:n=20,k=6"}, {"beta", 4}, {"colors", 18}},
      {{"name", "coloring"}, {"gen", "triangle"}, {"colors", 6}},
      {{"name", "maxcut"}, {"gen", "petersen"}},
      {{"name", "max3sat"}, {"gen", "kcnf:n=21,m=7,k=3,max_int=0"}},
      {{"name", "balance-matrix"}, {"gen", "binary:n=16"}},
      {{"name", "balance-vectors"}, {"gen", "vectors:n=8,dim=8"}},
      {{"name", "indepset"}, {"gen", "gnm:n=64,m=64"}},
      {{"name", "domset"}, {"gen", "complete4"}},
      {{"name", "bloom"}, {"bits", 4096}, {"members", 1024}},
      {{"name", "latin"}, {"gen", "latin:n=34,k=2"}},
      {{"name", "funcmin"}, {"distribution", "uniform:1:4"}, {"functions", {"square"}}},
      {{"name", "superset"}, {"gen", "family:bits=4,m=3"}, {"m", 1}},
  };
}

std::vector<json> game_corpus() {
  return {
      {{"name", "even-odds"}, {"rounds", 16}, {"adversary", "parity"}},
      {{"name", "graph-nav"}, {"gen", "petersen"}, {"goal", 9}, {"relabel_seed", 3}},
      {{"name", "penalty-tests"}, {"rounds", kPenaltyRounds}},
      {{"name", "cover-time"}, {"gen", "cycle6"}},
      {{"name", "min-cut"}, {"gen", "petersen"}},
      {{"name", "vertex-transitive"}, {"gen", "hypercube3"}, {"k", 2}},
  };
}

CommandResult run(json j, const char* command, unsigned threads, std::uint64_t trials = kTrials) {
  j["command"] = command;
  j["trials"] = trials;
  j["seed"] = kSeed;
  j["confidence"] = kConfidence;
  j["threads"] = threads;
  return run_command(ExperimentConfig::from_json(j));
}

// 2. Monte Carlo verdicts on the corpus.
Check monte_carlo_suite() {
  Check out;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t consistent = 0;
  for (const auto& j : construction_corpus()) {
    const auto name = j["name"].get<std::string>();
    const auto res = run(j, "verify", 0);
    if (!res.report) {
      out.fail(name + ": " + res.message);
      continue;
    }
    const auto& r = *res.report;
    if (!r.premise["ok"].get<bool>()) out.fail(name + " premise: " + r.premise["diagnostic"].get<std::string>());
    if (r.verdict == "REFUTED") out.fail(name + " REFUTED (p_hat " + fmt(r.p_hat) + " vs " + fmt(r.claimed_bound) + ")");
    consistent += r.verdict == "CONSISTENT";
  }
  const double secs = seconds_since(t0);
  if (secs > kMonteCarloSeconds) out.fail("took " + fmt(secs) + " s");
  if (out.pass)
    out.detail = "16 constructions, " + std::to_string(consistent) + " CONSISTENT, rest INCONCLUSIVE, " + fmt(secs) + " s";
  return out;
}

// 3. Two-phase routing on the 3-cube.
Check routing() {
  Check out;
  const auto t0 = std::chrono::steady_clock::now();
  for (const char* perm : {"reversal", "transpose"}) {
    const auto c = build_routing_construction(3, named_permutation(perm, 3));
    const auto est = run_trials([&](RngStream& rng) { return c.is_good(c.sample(rng)); }, kRoutingTrials, kSeed,
                                {kConfidence, 0});
    const auto v = verdict_against_bound(est, kRoutingClaim);
    if (v.status == VerdictStatus::Refuted)
      out.fail(std::string(perm) + " p_hat " + fmt(est.p_hat) + " refutes " + fmt(kRoutingClaim));
    out.detail += std::string(out.detail.empty() ? "" : ", ") + perm + " p_hat " + fmt(est.p_hat) + " (" +
                  to_string(v.status) + ")";
  }
  const double secs = seconds_since(t0);
  if (secs > kRoutingSeconds) out.fail("took " + fmt(secs) + " s");
  return out;
}

// 4. Moser-Tardos on generated premise-satisfying k-SAT instances.
Check moser_tardos_suite() {
  Check out;
  std::size_t solved = 0;
  double resamples = 0;
  for (std::size_t i = 0; i < kMoserTardosInstances; ++i) {
    const std::size_t k = 3 + i % 3;
    // max_int = floor(2^k / e) - 1, the largest degree the premise allows.
    const std::size_t max_int = k == 3 ? 1 : k == 4 ? 4 : 10;
    const std::size_t n = k == 3 ? 90 : k == 4 ? 160 : 200;
    const auto f = gen_random_kcnf(n, 10 * k, k, max_int, kSeed + i);
    const auto c = build_ksat(f, k);
    if (!c.premise.ok) {
      out.fail("instance " + std::to_string(i) + " premise: " + c.premise.diagnostic);
      continue;
    }
    const auto s = solve_with_resampling(c, ksat_event_system(f), kSeed + i);
    if (!s.found || !s.valid) continue;
    const auto& bits = std::get<BitAssignment>(s.solution).bits;
    if (!f.satisfied(bits)) continue;
    ++solved;
    resamples += static_cast<double>(s.work);
  }
  if (solved != kMoserTardosInstances) out.fail(std::to_string(solved) + "/100 solved");
  out.detail = std::to_string(solved) + "/" + std::to_string(kMoserTardosInstances) + " verified, mean resamples " +
               fmt(resamples / static_cast<double>(std::max<std::size_t>(solved, 1)));
  return out;
}

// 5. Even-Odds exhaustive enumeration.
Check even_odds() {
  Check out;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t checked = 0;
  for (std::uint64_t n : {4u, 9u, 16u}) {
    for (const char* adv : {"zero", "one", "copy-last", "parity", "majority", "hash"}) {
      const auto env = even_odds_env(n, even_odds_adversary(adv, kSeed));
      const auto bf = brute_force_agent(*env, n);
      if (bf.win_fraction != even_odds_win_fraction(n))
        out.fail(std::string(adv) + " N=" + std::to_string(n) + " fraction " + to_string(bf.win_fraction));
      if (!bf.winner) {
        out.fail(std::string(adv) + " N=" + std::to_string(n) + " no winner");
        continue;
      }
      const std::vector<std::uint64_t> acts(bf.winner->begin(), bf.winner->end());
      if (replay(*env, acts, n).outcome != derand::Outcome::Win) out.fail(std::string(adv) + " winner does not replay");
      ++checked;
    }
  }
  if (even_odds_win_fraction(16) != Rational(BigInt(14893), BigInt(65536))) out.fail("N=16 tail is not 14893/65536");
  const double secs = seconds_since(t0);
  if (secs > kEvenOddsSeconds) out.fail("took " + fmt(secs) + " s");
  if (out.pass) out.detail = std::to_string(checked) + " (N, adversary) pairs, N=16 fraction 14893/65536, " + fmt(secs) + " s";
  return out;
}

// 6. Exact walk analytics on certified transitive graphs.
Check walks() {
  Check out;
  struct G {
    const char* label;
    Graph g;
  };
  for (const auto& [label, g] : {G{"C4", cycle_graph(4)}, G{"C6", cycle_graph(6)}, G{"Q3", gen_hypercube(3)}}) {
    const Rational inv_n(BigInt(1), BigInt(g.num_vertices()));
    for (std::uint64_t k = 1; k <= 4; ++k) {
      const auto p = walk_probabilities(g, 0, 2 * k);
      for (const auto& x : p)
        if (p[0] < x) out.fail(std::string(label) + " return not maximal at 2k=" + std::to_string(2 * k));
      if (p[0] < inv_n) out.fail(std::string(label) + " return below 1/n at 2k=" + std::to_string(2 * k));
    }
  }
  if (return_probability(cycle_graph(4), 0, 2) != Rational(BigInt(1), BigInt(2))) out.fail("C4 P^2(u,u) != 1/2");
  if (return_probability(gen_hypercube(3), 0, 2) != Rational(BigInt(1), BigInt(3))) out.fail("Q3 P^2(u,u) != 1/3");
  if (out.pass) out.detail = "C4, C6, Q3 for 2k = 2..8 in exact rationals";
  return out;
}

// 7. Karger contraction against 2/(n(n-1)).
Check karger() {
  Check out;
  const std::vector<std::pair<std::string, Graph>> corpus = {
      {"triangle", cycle_graph(3)},
      {"C4", cycle_graph(4)},
      {"C5", cycle_graph(5)},
      {"C8", cycle_graph(8)},
      {"K4", complete_graph(4)},
      {"K5", complete_graph(5)},
      {"star4", star_graph(4)},
      {"path6", path_graph(6)},
      {"Q3", gen_hypercube(3)},
      {"bridged triangles", Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}})},
  };
  double worst = 1e9;
  for (const auto& [label, g] : corpus) {
    const double n = static_cast<double>(g.num_vertices());
    const double claim = 2.0 / (n * (n - 1));
    const auto env = karger_env(g);
    const auto est =
        estimate_win_probability(*env, uniform_agent(), g.num_vertices(), kTrials, kSeed, {kConfidence, 0});
    if (verdict_against_bound(est, claim).status == VerdictStatus::Refuted)
      out.fail(label + " p_hat " + fmt(est.p_hat) + " < " + fmt(claim));
    worst = std::min(worst, est.p_hat / claim);
  }
  if (out.pass) out.detail = std::to_string(corpus.size()) + " graphs, smallest p_hat/claim " + fmt(worst);
  return out;
}

// 8. Cover times against exact small-graph values.
Check cover_time() {
  Check out;
  struct Case {
    const char* label;
    Graph g;
    double exact;
  };
  for (const auto& [label, g, exact] : {Case{"C6", cycle_graph(6), 15.0}, Case{"K4", complete_graph(4), 5.5}}) {
    const auto m = estimate_cover_time(g, 0, kTrials, kSeed, {kConfidence, 0});
    const double rel = std::abs(m.mean - exact) / exact;
    if (rel > kCoverTolerance) out.fail(std::string(label) + " mean " + fmt(m.mean) + " vs " + fmt(exact));
    out.detail += std::string(out.detail.empty() ? "" : ", ") + label + " " + fmt(m.mean) + " (exact " + fmt(exact) + ")";
  }
  return out;
}

// 9. Penalty game with the documented parity test.
Check penalty() {
  Check out;
  const auto test = parity_penalty_test();
  const auto env = penalty_tests_env(kPenaltyRounds, {test});
  const auto m = estimate_penalty(*env, sampling_agent(), kPenaltyRounds + 1, kTrials, kSeed, {kConfidence, 0});
  const double n = static_cast<double>(kPenaltyRounds);
  if (!(m.mean < n)) out.fail("mean penalty " + fmt(m.mean) + " >= N");
  RngStream rng(kSeed, 0);
  const auto greedy = play(greedy_penalty_agent({test}), *env, kPenaltyRounds + 1, rng);
  if (greedy.outcome != derand::Outcome::Halt) out.fail("greedy agent did not halt");
  if (!(greedy.penalty < 2 * n)) out.fail("greedy penalty " + fmt(greedy.penalty) + " >= 2N");
  if (out.pass) out.detail = "mean " + fmt(m.mean) + " < 50, greedy " + fmt(greedy.penalty) + " < 100";
  return out;
}

// 10. Reports byte-identical (minus wall clock) under 1 and 8 threads.
Check reproducibility() {
  Check out;
  std::size_t compared = 0;
  auto compare = [&](const json& j, const char* command) {
    const auto a = run(j, command, 1);
    const auto b = run(j, command, 8);
    const auto name = j["name"].get<std::string>();
    if (!a.report || !b.report) {
      out.fail(name + ": " + a.message);
      return;
    }
    if (render_json(*a.report, false) != render_json(*b.report, false)) out.fail(name + " differs");
    ++compared;
  };
  for (const auto& j : construction_corpus()) compare(j, "verify");
  for (const auto& j : game_corpus()) compare(j, "game");
  if (out.pass) out.detail = std::to_string(compared) + " reports identical";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"exact oracles", exact_oracles},     {"monte carlo bounds", monte_carlo_suite},
      {"routing", routing},                 {"moser-tardos", moser_tardos_suite},
      {"even-odds exactness", even_odds},   {"walk analytics", walks},
      {"karger", karger},                   {"cover time", cover_time},
      {"penalty game", penalty},            {"reproducibility", reproducibility},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [label, fn] : criteria) {
    Check o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index++, label, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures;
}
