// Graph constructions: disjoint cycles, weakly frugal colouring, proper
// colouring, max-cut, independent set and dominating set.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "derand/constructions.hpp"
#include "derand/error.hpp"
#include "enumerate.hpp"

namespace derand {

using detail::fmt_double;

namespace {

constexpr double kE = std::numbers::e;

double binomial(double n, double k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
}

void uniform_labels(Construction& c, std::size_t n, std::size_t labels, bool partition) {
  if (labels == 0) throw InvalidArgument(c.name + ": need at least one color");
  c.sample = [n, labels, partition](RngStream& rng) -> Candidate {
    std::vector<std::uint32_t> x(n);
    for (auto& v : x) v = static_cast<std::uint32_t>(rng.below(labels));
    if (partition) return Partition{std::move(x)};
    return Coloring{std::move(x)};
  };
  detail::set_product_enumerator(c, detail::uniform_digits(n, labels),
                                 [partition](std::span<const std::uint32_t> d) -> Candidate {
                                   std::vector<std::uint32_t> x(d.begin(), d.end());
                                   if (partition) return Partition{std::move(x)};
                                   return Coloring{std::move(x)};
                                 });
}

void bernoulli_subset(Construction& c, std::size_t n, double p) {
  c.sample = [n, p](RngStream& rng) -> Candidate {
    Subset s;
    s.members.resize(n);
    for (auto& b : s.members) b = rng.bernoulli(p);
    return s;
  };
  detail::set_product_enumerator(c, detail::bernoulli_digits(n, p),
                                 [](std::span<const std::uint32_t> d) -> Candidate {
                                   return Subset{{d.begin(), d.end()}};
                                 });
}

std::size_t surviving_edges(const Graph& g, const std::vector<std::uint8_t>& members) {
  std::size_t y = 0;
  for (const auto& e : g.edges()) y += members[e.u] && members[e.v];
  return y;
}

std::vector<std::uint8_t> undominated(const Graph& g, const std::vector<std::uint8_t>& members) {
  std::vector<std::uint8_t> y(g.num_vertices(), 0);
  for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
    if (members[v]) continue;
    const auto nb = g.neighbors(v);
    y[v] = std::none_of(nb.begin(), nb.end(), [&](std::uint32_t u) { return members[u] != 0; });
  }
  return y;
}

bool simple_cycle(const Graph& g, const std::vector<std::uint32_t>& cycle) {
  if (cycle.size() < 3) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (cycle[i] >= g.num_vertices()) return false;
    if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  }
  auto sorted = cycle;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool disjoint_simple_cycles(const Graph& g, const CycleList& cycles) {
  std::vector<std::uint8_t> used(g.num_vertices(), 0);
  for (const auto& cyc : cycles.cycles) {
    if (!simple_cycle(g, cyc)) return false;
    for (auto v : cyc) {
      if (used[v]) return false;
      used[v] = 1;
    }
  }
  return true;
}

}  // namespace

std::size_t disjoint_cycle_components(std::size_t k) {
  if (k < 2) return 1;
  const double c = std::floor(static_cast<double>(k) / (3.0 * std::log(static_cast<double>(k))));
  return std::max<std::size_t>(1, static_cast<std::size_t>(c));
}

double cut_weight(const Graph& graph, const std::vector<std::uint32_t>& parts) {
  double w = 0.0;
  for (const auto& e : graph.edges())
    if (parts[e.u] != parts[e.v]) w += e.weight;
  return w;
}

bool is_independent_set(const Graph& graph, const std::vector<std::uint8_t>& members) {
  return members.size() == graph.num_vertices() && surviving_edges(graph, members) == 0;
}

bool is_dominating_set(const Graph& graph, const std::vector<std::uint8_t>& members) {
  if (members.size() != graph.num_vertices()) return false;
  const auto y = undominated(graph, members);
  return std::none_of(y.begin(), y.end(), [](std::uint8_t b) { return b != 0; });
}

bool is_weakly_frugal(const Graph& graph, const std::vector<std::uint32_t>& colors,
                      std::size_t beta) {
  std::vector<std::uint32_t> seen;
  for (std::uint32_t v = 0; v < graph.num_vertices(); ++v) {
    const auto nb = graph.neighbors(v);
    if (nb.size() <= beta) continue;
    seen.clear();
    for (auto u : nb) seen.push_back(colors[u]);
    std::sort(seen.begin(), seen.end());
    std::size_t run = 1;
    for (std::size_t i = 1; i < seen.size(); ++i) {
      run = seen[i] == seen[i - 1] ? run + 1 : 1;
      if (run > beta) return false;
    }
  }
  return true;
}

bool is_proper_coloring(const Graph& graph, const std::vector<std::uint32_t>& colors) {
  return std::all_of(graph.edges().begin(), graph.edges().end(),
                     [&](const Edge& e) { return colors[e.u] != colors[e.v]; });
}

std::vector<std::uint32_t> find_cycle_in_part(const Graph& graph,
                                              const std::vector<std::uint32_t>& partition,
                                              std::uint32_t part) {
  const std::size_t n = graph.num_vertices();
  std::vector<std::uint32_t> parent(n, UINT32_MAX);
  std::vector<std::uint8_t> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (partition[root] != part || state[root]) continue;
    stack.push_back({root, 0});
    state[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto nb = graph.neighbors(v);
      if (next == nb.size()) {
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      const std::uint32_t u = nb[next++];
      if (partition[u] != part || u == parent[v]) continue;
      if (state[u] == 1) {
        std::vector<std::uint32_t> cycle;
        for (std::uint32_t w = v; w != u; w = parent[w]) cycle.push_back(w);
        cycle.push_back(u);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (state[u] == 0) {
        parent[u] = v;
        state[u] = 1;
        stack.push_back({u, 0});
      }
    }
  }
  return {};
}

bool valid_disjoint_cycles(const Graph& graph, const std::vector<std::uint32_t>& partition,
                           std::size_t parts, const CycleList& cycles) {
  if (cycles.cycles.size() != parts || !disjoint_simple_cycles(graph, cycles)) return false;
  std::vector<std::uint8_t> part_used(parts, 0);
  for (const auto& cyc : cycles.cycles) {
    const auto p = partition[cyc.front()];
    if (p >= parts || part_used[p]) return false;
    part_used[p] = 1;
    for (auto v : cyc)
      if (partition[v] != p) return false;
  }
  return true;
}

Construction build_disjoint_cycles(const Graph& graph, std::size_t k) {
  Construction c;
  c.name = "cycles";
  const std::size_t n = graph.num_vertices();
  const std::size_t parts = disjoint_cycle_components(k);
  c.params = {{"vertices", n}, {"k", k}, {"components", parts}};
  const double kd = static_cast<double>(k);
  c.claimed_prob = k == 0 ? 0.0 : std::pow(1.0 - 1.0 / (kd * kd), static_cast<double>(n));
  c.claimed_expr = "(1 - 1/k^2)^n";

  if (graph.regular_degree() != std::optional<std::size_t>(k) && n > 0)
    c.premise.fail("graph is not " + std::to_string(k) + "-regular");
  if (k < 2) {
    c.premise.fail("k must be at least 2");
  } else {
    const double value = kE * (1.0 + (kd + 1) * (kd + 1)) / (kd * kd * kd);
    if (value > 1.0 + 1e-12)
      c.premise.fail("e*(1+(k+1)^2)/k^3 = " + fmt_double(value) + " > 1");
    // p and d recomputed: p = (1-1/c)^k, d = vertices sharing a closed neighborhood.
    const double p = std::pow(1.0 - 1.0 / static_cast<double>(parts), kd);
    std::size_t d = 0;
    if (n <= 4096) {
      std::vector<std::size_t> stamp(n, SIZE_MAX);
      for (std::uint32_t v = 0; v < n; ++v) {
        std::size_t deg = 0;
        auto touch = [&](std::uint32_t w) {
          auto mark = [&](std::uint32_t x) {
            if (x != v && stamp[x] != v) {
              stamp[x] = v;
              ++deg;
            }
          };
          mark(w);
          for (auto x : graph.neighbors(w)) mark(x);
        };
        touch(v);
        for (auto w : graph.neighbors(v)) touch(w);
        d = std::max(d, deg);
      }
    } else {
      d = (k + 1) * (k + 1);
    }
    c.premise.lll = symmetric_lll(p, static_cast<double>(d), n);
  }
  if (parts == 1) c.premise.notes.push_back("c = 1: a single component, the partition is trivial");

  uniform_labels(c, n, parts, true);
  c.is_good = [graph](const Candidate& cand) {
    const auto& parts_of = std::get<Partition>(cand).parts;
    for (std::uint32_t v = 0; v < graph.num_vertices(); ++v) {
      const auto nb = graph.neighbors(v);
      if (std::none_of(nb.begin(), nb.end(), [&](std::uint32_t u) { return parts_of[u] == parts_of[v]; }))
        return false;
    }
    return true;
  };
  c.post_process = [graph, parts](const Candidate& cand) -> Candidate {
    const auto& parts_of = std::get<Partition>(cand).parts;
    CycleList out;
    for (std::uint32_t p = 0; p < parts; ++p) {
      auto cyc = find_cycle_in_part(graph, parts_of, p);
      if (!cyc.empty()) out.cycles.push_back(std::move(cyc));
    }
    return out;
  };
  c.validate_solution = [graph, parts](const Candidate& cand) {
    const auto& cycles = std::get<CycleList>(cand);
    return cycles.cycles.size() == parts && disjoint_simple_cycles(graph, cycles);
  };
  return c;
}

Construction build_frugal_coloring(const Graph& graph, std::size_t beta, std::size_t colors) {
  Construction c;
  c.name = "frugal";
  const std::size_t n = graph.num_vertices();
  const std::size_t delta = graph.max_degree();
  c.params = {{"vertices", n}, {"beta", beta}, {"colors", colors}, {"max_degree", delta}};
  if (beta == 0) throw InvalidArgument("frugal: beta must be positive");
  c.claimed_prob = std::exp2(-2.0 * static_cast<double>(n) / static_cast<double>(beta));
  c.claimed_expr = "2^(-2n/beta)";

  const double dd = static_cast<double>(delta);
  const double bd = static_cast<double>(beta);
  const double qd = static_cast<double>(colors);
  if (dd <= 2 * kE) c.premise.fail("max degree " + std::to_string(delta) + " is not above 2e");
  if (beta >= delta) c.premise.fail("beta must be below the max degree");
  const double q_min = std::pow(dd, 1.0 + 4.0 / bd) / 2.0;
  if (qd < q_min) c.premise.fail("Q = " + std::to_string(colors) + " is below Delta^(1+4/beta)/2 = " + fmt_double(q_min));
  const double p = std::pow(qd, -bd);
  const double d_closed = (bd + 1) * dd * binomial(dd, bd);
  const double value = kE * p * (1.0 + d_closed);
  if (value > 1.0 + 1e-12) c.premise.fail("e*Q^-beta*(1+(beta+1)*Delta*C(Delta,beta)) = " + fmt_double(value) + " > 1");
  if (beta < 4) c.premise.notes.push_back("beta < 4: outside the 1/beta! <= 2^-beta step of the proof");

  // Bad events: beta+1 neighbors of one vertex sharing a color.
  double events = 0.0;
  for (std::uint32_t v = 0; v < n; ++v) events += binomial(static_cast<double>(graph.degree(v)), bd + 1);
  double d = d_closed;
  if (events <= 20000.0 && events > 0.0) {
    BadEventSystem sys;
    sys.domains.assign(n, 1);
    std::vector<std::uint32_t> pick;
    for (std::uint32_t v = 0; v < n; ++v) {
      const auto nb = graph.neighbors(v);
      if (nb.size() < beta + 1) continue;
      std::vector<std::uint8_t> mask(nb.size(), 0);
      std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(beta + 1), 1);
      do {
        pick.clear();
        for (std::size_t i = 0; i < nb.size(); ++i)
          if (mask[i]) pick.push_back(nb[i]);
        sys.events.push_back({pick, [](std::span<const std::uint32_t>) { return false; }});
      } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    d = static_cast<double>(dependency_degree(sys).d_max);
    c.premise.notes.push_back("measured dependency degree " + fmt_double(d) + " (closed form " + fmt_double(d_closed) + ")");
  }
  c.premise.lll = symmetric_lll(std::min(p, 1.0), d, static_cast<std::size_t>(events));

  uniform_labels(c, n, colors, false);
  c.is_good = [graph, beta](const Candidate& cand) {
    return is_weakly_frugal(graph, std::get<Coloring>(cand).colors, beta);
  };
  c.validate_solution = c.is_good;
  return c;
}

Construction build_graph_coloring(const Graph& graph, std::size_t colors) {
  Construction c;
  c.name = "coloring";
  const std::size_t n = graph.num_vertices();
  const std::size_t d = graph.max_degree();
  c.params = {{"vertices", n}, {"colors", colors}, {"max_degree", d}};
  c.claimed_expr = "((k-d)/k)^n";
  c.claimed_prob = colors == 0 || colors < d
                       ? 0.0
                       : std::pow(static_cast<double>(colors - d) / static_cast<double>(colors),
                                  static_cast<double>(n));
  if (colors < 2 * d) c.premise.fail("k = " + std::to_string(colors) + " is below 2d = " + std::to_string(2 * d));

  uniform_labels(c, n, colors, false);
  c.is_good = [graph](const Candidate& cand) { return is_proper_coloring(graph, std::get<Coloring>(cand).colors); };
  c.validate_solution = c.is_good;
  return c;
}

Construction build_max_cut(const Graph& graph) {
  Construction c;
  c.name = "maxcut";
  const double omega = graph.total_weight();
  c.params = {{"vertices", graph.num_vertices()}, {"edges", graph.num_edges()}, {"total_weight", omega}};
  c.claimed_prob = 0.25;
  c.claimed_expr = "1/4";
  if (!(omega > 0.0)) c.premise.fail("total edge weight must be positive");

  uniform_labels(c, graph.num_vertices(), 2, true);
  c.is_good = [graph, omega](const Candidate& cand) {
    return cut_weight(graph, std::get<Partition>(cand).parts) > omega / 3.0;
  };
  c.validate_solution = c.is_good;
  c.statistic = [graph](const Candidate& cand) { return cut_weight(graph, std::get<Partition>(cand).parts); };
  c.statistic_name = "cut weight";
  c.statistic_expected = omega / 2.0;
  return c;
}

Construction build_independent_set(const Graph& graph) {
  Construction c;
  c.name = "indepset";
  const std::size_t n = graph.num_vertices();
  const std::size_t m = graph.num_edges();
  c.claimed_prob = 0.1;
  c.claimed_expr = "1/10";
  if (n == 0) {
    c.premise.fail("graph must have at least one vertex");
    c.params = {{"vertices", 0}, {"edges", 0}};
    c.sample = [](RngStream&) -> Candidate { return Subset{}; };
    c.is_good = [](const Candidate&) { return false; };
    return c;
  }
  const double root = std::sqrt(static_cast<double>(n));
  const double p = 1.0 / root;
  const double x_min = 0.75 * root;
  const double y_max = 2.0 * static_cast<double>(m) / static_cast<double>(n);
  c.params = {{"vertices", n}, {"edges", m}, {"p", p}};

  bernoulli_subset(c, n, p);
  c.is_good = [graph, x_min, y_max](const Candidate& cand) {
    const auto& s = std::get<Subset>(cand);
    return static_cast<double>(s.size()) > x_min &&
           static_cast<double>(surviving_edges(graph, s.members)) <= y_max;
  };
  c.post_process = [graph](const Candidate& cand) -> Candidate {
    auto s = std::get<Subset>(cand);
    for (const auto& e : graph.edges())
      if (s.members[e.u] && s.members[e.v]) s.members[e.u] = 0;
    return s;
  };
  c.validate_solution = [graph](const Candidate& cand) {
    return is_independent_set(graph, std::get<Subset>(cand).members);
  };
  c.statistic = [](const Candidate& cand) { return static_cast<double>(std::get<Subset>(cand).size()); };
  c.statistic_name = "kept vertices";
  c.statistic_expected = root;
  return c;
}

Construction build_dominating_set(const Graph& graph) {
  Construction c;
  c.name = "domset";
  const std::size_t n = graph.num_vertices();
  const std::size_t delta = graph.min_degree();
  const double d1 = static_cast<double>(delta) + 1.0;
  const double p = std::log(d1) / d1;
  c.params = {{"vertices", n}, {"min_degree", delta}, {"p", p}};
  c.claimed_prob = 1.0 / 3.0;
  c.claimed_expr = "1/3";
  if (n == 0 || delta <= 1) c.premise.fail("minimum degree must exceed 1");

  const double nd = static_cast<double>(n);
  const double x_max = 3.0 * nd * p;
  const double y_max = 3.0 * nd / d1;
  bernoulli_subset(c, n, std::min(p, 1.0));
  c.is_good = [graph, x_max, y_max](const Candidate& cand) {
    const auto& s = std::get<Subset>(cand);
    if (static_cast<double>(s.size()) > x_max) return false;
    const auto y = undominated(graph, s.members);
    return static_cast<double>(std::count(y.begin(), y.end(), std::uint8_t{1})) <= y_max;
  };
  c.post_process = [graph](const Candidate& cand) -> Candidate {
    auto s = std::get<Subset>(cand);
    const auto y = undominated(graph, s.members);
    for (std::size_t v = 0; v < y.size(); ++v) s.members[v] |= y[v];
    return s;
  };
  c.validate_solution = [graph](const Candidate& cand) {
    return is_dominating_set(graph, std::get<Subset>(cand).members);
  };
  return c;
}

}  // namespace derand
