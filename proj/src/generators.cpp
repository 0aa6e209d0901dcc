#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <unordered_set>

#include "derand/error.hpp"
#include "derand/instances.hpp"
#include "derand/rng.hpp"

namespace derand {

namespace {

constexpr std::size_t kRestarts = 200;
constexpr std::size_t kDrawsPerSet = 2000;

// m random k-subsets of [0, n) such that every subset shares an element with
// at most max_intersections of the others.
std::vector<std::vector<std::uint32_t>> bounded_intersection_sets(std::size_t n, std::size_t m,
                                                                  std::size_t k,
                                                                  std::size_t max_intersections,
                                                                  std::uint64_t seed,
                                                                  const char* what) {
  if (k == 0 || k > n)
    throw GenerationError(std::string(what) + ": need 1 <= k <= n");
  if (max_intersections == 0 && m * k > n)
    throw GenerationError(std::string(what) + ": " + std::to_string(m) +
                          " pairwise-disjoint sets of size " + std::to_string(k) +
                          " do not fit in " + std::to_string(n) + " elements");
  for (std::size_t attempt = 0; attempt < kRestarts; ++attempt) {
    RngStream rng(seed, attempt);
    std::vector<std::vector<std::uint32_t>> sets;
    std::vector<std::vector<std::size_t>> owners(n);
    std::vector<std::size_t> degree;
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    bool stuck = false;
    while (sets.size() < m && !stuck) {
      stuck = true;
      for (std::size_t draw = 0; draw < kDrawsPerSet; ++draw) {
        for (std::size_t i = 0; i < k; ++i)
          std::swap(pool[i], pool[i + static_cast<std::size_t>(rng.below(n - i))]);
        std::vector<std::uint32_t> candidate(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(candidate.begin(), candidate.end());
        std::set<std::size_t> hits;
        for (auto x : candidate) hits.insert(owners[x].begin(), owners[x].end());
        if (hits.size() > max_intersections) continue;
        if (std::any_of(hits.begin(), hits.end(),
                        [&](std::size_t h) { return degree[h] + 1 > max_intersections; }))
          continue;
        for (auto h : hits) ++degree[h];
        degree.push_back(hits.size());
        for (auto x : candidate) owners[x].push_back(sets.size());
        sets.push_back(std::move(candidate));
        stuck = false;
        break;
      }
    }
    if (!stuck) return sets;
  }
  throw GenerationError(std::string(what) + ": could not satisfy the intersection bound after " +
                        std::to_string(kRestarts) + " restarts");
}

}  // namespace

CnfFormula gen_random_kcnf(std::size_t n, std::size_t m, std::size_t k,
                           std::size_t max_intersections, std::uint64_t seed) {
  auto sets = bounded_intersection_sets(n, m, k, max_intersections, seed, "gen_random_kcnf");
  RngStream signs(seed, kRestarts);
  std::vector<Clause> clauses;
  for (const auto& s : sets) {
    Clause c;
    for (auto v : s) c.push_back({v, signs.coin()});
    clauses.push_back(std::move(c));
  }
  return CnfFormula(n, std::move(clauses));
}

Hypergraph gen_random_hypergraph(std::size_t n, std::size_t m, std::size_t k,
                                 std::size_t max_intersections, std::uint64_t seed) {
  return Hypergraph(n, bounded_intersection_sets(n, m, k, max_intersections, seed,
                                                 "gen_random_hypergraph"));
}

namespace {

// Steger-Wormald pairing: draw random pairs of free points, keep the pair
// only when it creates neither a loop nor a parallel edge.
std::optional<std::vector<Edge>> try_regular(std::size_t n, std::size_t k, RngStream& rng) {
  std::vector<std::uint32_t> points;
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::size_t j = 0; j < k; ++j) points.push_back(v);
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  while (!points.empty()) {
    bool paired = false;
    for (int tries = 0; tries < 64 && !paired; ++tries) {
      auto i = static_cast<std::size_t>(rng.below(points.size()));
      auto j = static_cast<std::size_t>(rng.below(points.size()));
      auto a = points[i], b = points[j];
      if (i == j || a == b || edges.count(std::minmax(a, b))) continue;
      edges.insert(std::minmax(a, b));
      if (i < j) std::swap(i, j);
      points[i] = points.back();
      points.pop_back();
      points[j] = points.back();
      points.pop_back();
      paired = true;
    }
    if (paired) continue;
    // Check whether any suitable pair remains at all.
    bool any = false;
    for (std::size_t i = 0; i < points.size() && !any; ++i)
      for (std::size_t j = i + 1; j < points.size() && !any; ++j)
        any = points[i] != points[j] && !edges.count(std::minmax(points[i], points[j]));
    if (!any) return std::nullopt;
  }
  std::vector<Edge> out;
  for (auto [u, v] : edges) out.push_back({u, v, 1.0});
  return out;
}

Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  const auto n = static_cast<std::uint32_t>(g.num_vertices());
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) edges.push_back({u, v, 1.0});
  return Graph(n, std::move(edges));
}

}  // namespace

Graph gen_random_regular(std::size_t n, std::size_t k, std::uint64_t seed) {
  if ((n * k) % 2 != 0) throw GenerationError("gen_random_regular: n*k must be even");
  if (n > 0 && k >= n) throw GenerationError("gen_random_regular: need k < n");
  if (2 * k > n - 1 && n > 0) {
    // Dense case: generate the sparser complement.
    return complement(gen_random_regular(n, n - 1 - k, seed));
  }
  for (std::size_t attempt = 0; attempt < 10 * kRestarts; ++attempt) {
    RngStream rng(seed, attempt);
    if (auto edges = try_regular(n, k, rng)) return Graph(n, std::move(*edges));
  }
  throw GenerationError("gen_random_regular: pairing failed repeatedly");
}

Graph gen_random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2 && m > 0) throw GenerationError("gen_random_graph: too few vertices");
  if (m > n * (n - 1) / 2) throw GenerationError("gen_random_graph: too many edges");
  RngStream rng(seed, 0);
  std::set<std::pair<std::uint32_t, std::uint32_t>> chosen;
  while (chosen.size() < m) {
    auto u = static_cast<std::uint32_t>(rng.below(n));
    auto v = static_cast<std::uint32_t>(rng.below(n));
    if (u != v) chosen.insert(std::minmax(u, v));
  }
  std::vector<Edge> edges;
  for (auto [u, v] : chosen) edges.push_back({u, v, 1.0});
  return Graph(n, std::move(edges));
}

Graph gen_hypercube(unsigned dim) {
  if (dim > 24) throw GenerationError("gen_hypercube: dimension too large");
  const std::uint32_t n = 1u << dim;
  std::vector<Edge> edges;
  for (std::uint32_t v = 0; v < n; ++v)
    for (unsigned b = 0; b < dim; ++b) {
      const std::uint32_t u = v ^ (1u << b);
      if (v < u) edges.push_back({v, u, 1.0});
    }
  return Graph(n, std::move(edges));
}

IntMatrix gen_latin_matrix(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k == 0 || (n * n) % k != 0)
    throw GenerationError("gen_latin_matrix: k must divide n^2");
  std::vector<std::int64_t> entries(n * n);
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = static_cast<std::int64_t>(i / k);
  RngStream rng(seed, 0);
  rng.shuffle(std::span<std::int64_t>(entries));
  return IntMatrix(n, std::move(entries));
}

BinaryMatrix gen_binary_matrix(std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<std::uint8_t> entries(n * n);
  for (auto& b : entries) b = rng.coin() ? 1 : 0;
  return BinaryMatrix(n, std::move(entries));
}

UnitVectors gen_unit_vectors(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (dim == 0 && n > 0) throw GenerationError("gen_unit_vectors: dimension must be positive");
  RngStream rng(seed, 0);
  std::vector<std::vector<double>> vectors;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(dim);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& x : v) {
        // Box-Muller, cosine branch only.
        const double u1 = 1.0 - rng.uniform();
        const double u2 = rng.uniform();
        x = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        norm += x * x;
      }
    } while (norm < 1e-12);
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    vectors.push_back(std::move(v));
  }
  return UnitVectors(std::move(vectors));
}

SetFamily gen_set_family(unsigned bits, std::size_t m, std::uint64_t seed) {
  if (bits > 63) throw GenerationError("gen_set_family: at most 63 bits");
  if (bits < 63 && m > (std::uint64_t{1} << bits))
    throw GenerationError("gen_set_family: more members than strings");
  RngStream rng(seed, 0);
  std::unordered_set<std::uint64_t> chosen;
  std::vector<std::uint64_t> members;
  const std::uint64_t universe = std::uint64_t{1} << bits;
  while (members.size() < m) {
    auto x = rng.below(universe);
    if (chosen.insert(x).second) members.push_back(x);
  }
  return SetFamily(bits, std::move(members));
}

std::string to_string(TransitiveKind kind) {
  switch (kind) {
    case TransitiveKind::Cycle:
      return "cycle";
    case TransitiveKind::Hypercube:
      return "hypercube";
    case TransitiveKind::Complete:
      return "complete";
  }
  return "cycle";
}

TransitiveKind parse_transitive_kind(std::string_view name) {
  if (name == "cycle") return TransitiveKind::Cycle;
  if (name == "hypercube") return TransitiveKind::Hypercube;
  if (name == "complete") return TransitiveKind::Complete;
  throw InvalidArgument("unknown vertex-transitive family '" + std::string(name) + "'");
}

Graph gen_vertex_transitive(TransitiveKind kind, std::size_t size) {
  switch (kind) {
    case TransitiveKind::Cycle:
      return cycle_graph(size);
    case TransitiveKind::Hypercube:
      return gen_hypercube(static_cast<unsigned>(size));
    case TransitiveKind::Complete:
      return complete_graph(size);
  }
  throw InvalidArgument("unknown vertex-transitive family");
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw GenerationError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::uint32_t v = 0; v < n; ++v)
    edges.push_back({v, static_cast<std::uint32_t>((v + 1) % n), 1.0});
  return Graph(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
  return Graph(n, std::move(edges));
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::uint32_t v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
  return Graph(n, std::move(edges));
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::uint32_t v = 1; v <= leaves; ++v) edges.push_back({0, v, 1.0});
  return Graph(leaves + 1, std::move(edges));
}

Graph petersen_graph() {
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5, 1.0});
    edges.push_back({i, i + 5, 1.0});
    edges.push_back({i + 5, (i + 2) % 5 + 5, 1.0});
  }
  return Graph(10, std::move(edges));
}

Graph named_graph(std::string_view name) {
  auto suffix = [&](std::string_view prefix) -> std::optional<std::size_t> {
    if (name.substr(0, prefix.size()) != prefix || name.size() == prefix.size()) return std::nullopt;
    std::size_t value = 0;
    for (char c : name.substr(prefix.size())) {
      if (c < '0' || c > '9') return std::nullopt;
      value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
  };
  if (name == "triangle") return cycle_graph(3);
  if (name == "edge") return path_graph(2);
  if (name == "petersen") return petersen_graph();
  if (auto n = suffix("cycle")) return cycle_graph(*n);
  if (auto n = suffix("complete")) return complete_graph(*n);
  if (auto n = suffix("path")) return path_graph(*n);
  if (auto n = suffix("star")) return star_graph(*n);
  if (auto n = suffix("hypercube")) return gen_hypercube(static_cast<unsigned>(*n));
  if (auto n = suffix("empty")) return Graph(*n, {});
  throw InvalidArgument("unknown named graph '" + std::string(name) + "'");
}

}  // namespace derand
