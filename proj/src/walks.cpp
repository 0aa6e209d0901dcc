// Random-walk analytics and brute-force cuts for the graph games.

#include <algorithm>
#include <bit>
#include <cmath>

#include "derand/error.hpp"
#include "derand/games.hpp"

namespace derand {

namespace {

std::vector<double> walk_step(const Graph& g, const std::vector<double>& dist) {
  std::vector<double> next(dist.size(), 0.0);
  for (std::uint32_t u = 0; u < g.num_vertices(); ++u) {
    if (dist[u] == 0.0) continue;
    const auto nb = g.neighbors(u);
    if (nb.empty()) {
      next[u] += dist[u];
      continue;
    }
    const double share = dist[u] / static_cast<double>(nb.size());
    for (auto v : nb) next[v] += share;
  }
  return next;
}

std::vector<Edge> sorted_edges(const Graph& g) {
  auto e = g.edges();
  std::sort(e.begin(), e.end(), [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  return e;
}

bool same_graph(const Graph& a, const Graph& b) {
  return a.num_vertices() == b.num_vertices() && sorted_edges(a) == sorted_edges(b);
}

}  // namespace

std::vector<double> stationary_distribution(const Graph& graph) {
  if (graph.num_edges() == 0) throw InstanceError("stationary distribution needs at least one edge");
  std::vector<double> pi(graph.num_vertices());
  const double total = 2.0 * static_cast<double>(graph.num_edges());
  for (std::uint32_t v = 0; v < pi.size(); ++v) pi[v] = static_cast<double>(graph.degree(v)) / total;
  return pi;
}

std::vector<double> exact_walk_distribution(const Graph& graph, std::uint32_t s, std::uint64_t t) {
  if (s >= graph.num_vertices()) throw InvalidArgument("start vertex out of range");
  std::vector<double> dist(graph.num_vertices(), 0.0);
  dist[s] = 1.0;
  for (std::uint64_t i = 0; i < t; ++i) dist = walk_step(graph, dist);
  return dist;
}

std::uint64_t mixing_time(const Graph& graph, std::uint64_t limit) {
  if (graph.num_vertices() == 0 || !graph.connected()) throw InstanceError("mixing time needs a connected graph");
  if (graph.bipartite()) throw InstanceError("mixing time needs a non-bipartite graph");
  const auto pi = stationary_distribution(graph);
  const double tol = *std::min_element(pi.begin(), pi.end()) / 2.0;
  const std::size_t n = graph.num_vertices();
  std::vector<std::vector<double>> rows(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    rows[s].assign(n, 0.0);
    rows[s][s] = 1.0;
  }
  for (std::uint64_t t = 0; t <= limit; ++t) {
    double worst = 0.0;
    for (const auto& row : rows)
      for (std::size_t v = 0; v < n; ++v) worst = std::max(worst, std::abs(row[v] - pi[v]));
    if (worst <= tol) return t;
    for (auto& row : rows) row = walk_step(graph, row);
  }
  throw Error("mixing time exceeds " + std::to_string(limit) + " steps");
}

std::optional<TransitiveKind> certify_transitive(const Graph& graph) {
  const std::size_t n = graph.num_vertices();
  if (n >= 3 && same_graph(graph, gen_vertex_transitive(TransitiveKind::Cycle, n))) return TransitiveKind::Cycle;
  if (n >= 1 && same_graph(graph, gen_vertex_transitive(TransitiveKind::Complete, n))) return TransitiveKind::Complete;
  if (n >= 2 && std::has_single_bit(n)) {
    const auto dim = static_cast<std::size_t>(std::countr_zero(n));
    if (same_graph(graph, gen_vertex_transitive(TransitiveKind::Hypercube, dim))) return TransitiveKind::Hypercube;
  }
  return std::nullopt;
}

std::vector<Rational> walk_probabilities(const Graph& graph, std::uint32_t u, std::uint64_t t) {
  if (!certify_transitive(graph)) throw Refusal("graph is not one of the certified vertex-transitive families");
  if (u >= graph.num_vertices()) throw InvalidArgument("start vertex out of range");
  const std::size_t n = graph.num_vertices();
  std::vector<Rational> dist(n, Rational(0));
  dist[u] = 1;
  for (std::uint64_t i = 0; i < t; ++i) {
    std::vector<Rational> next(n, Rational(0));
    for (std::uint32_t x = 0; x < n; ++x) {
      // rational<cpp_int> vs. int comparison recurses forever in Boost 1.74.
      if (dist[x].numerator() == 0) continue;
      const auto nb = graph.neighbors(x);
      if (nb.empty()) {
        next[x] += dist[x];
        continue;
      }
      const Rational share = dist[x] / BigInt(nb.size());
      for (auto y : nb) next[y] += share;
    }
    dist = std::move(next);
  }
  return dist;
}

Rational return_probability(const Graph& graph, std::uint32_t u, std::uint64_t t) {
  return walk_probabilities(graph, u, t)[u];
}

std::size_t exact_min_cut(const Graph& graph) {
  const std::size_t n = graph.num_vertices();
  if (n < 2) throw InvalidArgument("min cut needs at least two vertices");
  if (n > 20) throw Refusal("brute-force min cut limited to 20 vertices");
  std::size_t best = SIZE_MAX;
  // Vertex 0 always on side 0; mask gives the side of vertices 1..n-1.
  const std::uint32_t full = (1u << (n - 1)) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::size_t cut = 0;
    for (const auto& e : graph.edges()) {
      const bool su = e.u == 0 ? false : (mask >> (e.u - 1)) & 1u;
      const bool sv = e.v == 0 ? false : (mask >> (e.v - 1)) & 1u;
      cut += su != sv;
    }
    best = std::min(best, cut);
  }
  return best;
}

}  // namespace derand
