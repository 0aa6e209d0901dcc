#include "derand/solve.hpp"

#include <algorithm>

#include "derand/constructions.hpp"
#include "derand/error.hpp"

namespace derand {

namespace {

Candidate as_candidate(const Construction& c, std::vector<std::uint32_t> assignment) {
  if (c.name == "ksat" || c.name == "max3sat")
    return BitAssignment{std::vector<std::uint8_t>(assignment.begin(), assignment.end())};
  return Coloring{std::move(assignment)};
}

void finish(const Construction& c, SolveResult& r) {
  r.found = c.is_good(r.candidate);
  if (!r.found) return;
  r.solution = c.finish(r.candidate);
  r.valid = c.validate_solution ? c.validate_solution(r.solution) : true;
}

}  // namespace

BadEventSystem ksat_event_system(const CnfFormula& formula) {
  BadEventSystem sys;
  sys.domains.assign(formula.num_vars(), 2);
  for (const auto& clause : formula.clauses()) {
    BadEvent e;
    for (const auto& lit : clause) e.support.push_back(lit.var);
    e.violated = [clause](std::span<const std::uint32_t> a) {
      return std::none_of(clause.begin(), clause.end(),
                          [&](const Literal& l) { return (a[l.var] != 0) != l.negated; });
    };
    sys.events.push_back(std::move(e));
  }
  return sys;
}

BadEventSystem hypergraph_event_system(const Hypergraph& hypergraph) {
  BadEventSystem sys;
  sys.domains.assign(hypergraph.num_vertices(), 2);
  for (const auto& edge : hypergraph.edges()) {
    sys.events.push_back({edge, [edge](std::span<const std::uint32_t> a) {
                            return std::all_of(edge.begin(), edge.end(),
                                               [&](std::uint32_t v) { return a[v] == a[edge.front()]; });
                          }});
  }
  return sys;
}

BadEventSystem frugal_event_system(const Graph& graph, std::size_t beta, std::size_t colors) {
  if (colors == 0 || colors > UINT32_MAX) throw InvalidArgument("frugal: invalid color count");
  BadEventSystem sys;
  sys.domains.assign(graph.num_vertices(), static_cast<std::uint32_t>(colors));
  for (std::uint32_t v = 0; v < graph.num_vertices(); ++v) {
    const auto nb = graph.neighbors(v);
    if (nb.size() <= beta) continue;
    std::vector<std::uint32_t> support(nb.begin(), nb.end());
    sys.events.push_back({support, [support, beta](std::span<const std::uint32_t> a) {
                            std::vector<std::uint32_t> cols;
                            for (auto u : support) cols.push_back(a[u]);
                            std::sort(cols.begin(), cols.end());
                            std::size_t run = 1;
                            for (std::size_t i = 1; i < cols.size(); ++i) {
                              run = cols[i] == cols[i - 1] ? run + 1 : 1;
                              if (run > beta) return true;
                            }
                            return false;
                          }});
  }
  return sys;
}

SolveResult solve_with_resampling(const Construction& c, const BadEventSystem& system,
                                  std::uint64_t seed, std::optional<std::uint64_t> budget) {
  const auto mt = moser_tardos(system, seed, budget);
  SolveResult r;
  r.method = "moser-tardos";
  r.work = mt.resamples;
  r.budget = mt.budget;
  r.candidate = as_candidate(c, mt.assignment);
  if (mt.solved) finish(c, r);
  return r;
}

SolveResult solve_latin(const Construction& c, const IntMatrix& matrix, std::uint64_t seed,
                        std::optional<std::uint64_t> budget) {
  const std::size_t n = matrix.size();
  SolveResult r;
  r.method = "swap-resampling";
  r.budget = budget.value_or(64 * (n * n + 1));
  RngStream rng(seed, 0);
  auto perm = rng.permutation(n);
  auto clash = [&]() -> std::optional<std::pair<std::size_t, std::size_t>> {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (matrix.at(i, perm[i]) == matrix.at(j, perm[j])) return std::pair{i, j};
    return std::nullopt;
  };
  while (auto bad = clash()) {
    if (r.work == r.budget) {
      r.candidate = Permutation{perm};
      return r;
    }
    ++r.work;
    // Resample the events' variables: both rows take a fresh uniform partner.
    for (std::size_t row : {bad->first, bad->second}) {
      const auto other = static_cast<std::size_t>(rng.below(n));
      std::swap(perm[row], perm[other]);
    }
  }
  r.candidate = Permutation{perm};
  finish(c, r);
  return r;
}

SolveResult solve_by_rejection(const Construction& c, std::uint64_t seed, std::uint64_t max_attempts) {
  SolveResult r;
  r.method = "rejection";
  r.budget = max_attempts;
  for (std::uint64_t i = 0; i < max_attempts; ++i) {
    RngStream rng(seed, i);
    r.candidate = c.sample(rng);
    r.work = i + 1;
    if (c.is_good(r.candidate)) {
      finish(c, r);
      return r;
    }
  }
  return r;
}

}  // namespace derand
