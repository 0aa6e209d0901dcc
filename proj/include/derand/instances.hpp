#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace derand {

// ---------------------------------------------------------------------------
// Graphs

struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double weight = 1.0;

  bool operator==(const Edge&) const = default;
};

/// Simple undirected graph on vertices [0, n) with optional edge weights.
/// Rejects self-loops, duplicate edges, out-of-range endpoints and negative
/// weights at construction.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Sorted neighbor list.
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const;
  std::size_t degree(std::uint32_t v) const { return neighbors(v).size(); }
  std::size_t max_degree() const noexcept;
  std::size_t min_degree() const noexcept;
  bool has_edge(std::uint32_t u, std::uint32_t v) const;
  /// Index of edge {u, v} in edges(), if present.
  std::optional<std::size_t> edge_index(std::uint32_t u, std::uint32_t v) const;

  double total_weight() const noexcept;
  bool weighted() const noexcept;
  std::optional<std::size_t> regular_degree() const noexcept;
  bool connected() const;
  bool bipartite() const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> adjacency_;
};

// ---------------------------------------------------------------------------
// Hypergraphs

class Hypergraph {
 public:
  Hypergraph() = default;
  /// Edges are stored sorted; empty edges, repeated vertices inside an edge
  /// and out-of-range vertices are rejected.
  Hypergraph(std::size_t n, std::vector<std::vector<std::uint32_t>> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<std::vector<std::uint32_t>>& edges() const noexcept { return edges_; }
  std::size_t min_edge_size() const noexcept;
  std::size_t max_edge_size() const noexcept;
  bool uniform() const noexcept { return min_edge_size() == max_edge_size(); }

  bool operator==(const Hypergraph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<std::uint32_t>> edges_;
};

// ---------------------------------------------------------------------------
// CNF formulas

/// Variable indices are 0-based internally; DIMACS text is 1-based.
struct Literal {
  std::uint32_t var = 0;
  bool negated = false;

  bool satisfied_by(std::span<const std::uint8_t> assignment) const {
    return (assignment[var] != 0) != negated;
  }
  bool operator==(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

class CnfFormula {
 public:
  CnfFormula() = default;
  /// Rejects out-of-range variables and clauses mentioning a variable twice.
  CnfFormula(std::size_t num_vars, std::vector<Clause> clauses);

  std::size_t num_vars() const noexcept { return num_vars_; }
  std::size_t num_clauses() const noexcept { return clauses_.size(); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

  bool clause_satisfied(std::size_t c, std::span<const std::uint8_t> assignment) const;
  std::size_t count_satisfied(std::span<const std::uint8_t> assignment) const;
  bool satisfied(std::span<const std::uint8_t> assignment) const;
  /// Every clause has exactly k literals.
  bool uniform(std::size_t k) const noexcept;

  bool operator==(const CnfFormula&) const = default;

 private:
  std::size_t num_vars_ = 0;
  std::vector<Clause> clauses_;
};

/// Number of other clauses sharing a variable with each clause.
std::vector<std::size_t> clause_intersection_degrees(const CnfFormula& formula);

// ---------------------------------------------------------------------------
// Matrices and vectors

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t n, std::vector<std::int64_t> entries);

  std::size_t size() const noexcept { return n_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<std::int64_t>& entries() const noexcept { return entries_; }
  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> entries_;
};

class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t n, std::vector<std::uint8_t> entries);

  std::size_t size() const noexcept { return n_; }
  std::uint8_t at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<std::uint8_t>& entries() const noexcept { return entries_; }
  bool operator==(const BinaryMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> entries_;
};

inline constexpr double kUnitNormTolerance = 1e-9;

/// n vectors of a common dimension, each of Euclidean norm 1.
class UnitVectors {
 public:
  UnitVectors() = default;
  explicit UnitVectors(std::vector<std::vector<double>> vectors);

  std::size_t count() const noexcept { return vectors_.size(); }
  std::size_t dim() const noexcept { return vectors_.empty() ? 0 : vectors_.front().size(); }
  const std::vector<std::vector<double>>& vectors() const noexcept { return vectors_; }
  bool operator==(const UnitVectors&) const = default;

 private:
  std::vector<std::vector<double>> vectors_;
};

/// Distinct bit strings of a common length (at most 63 bits), stored as
/// integers whose most significant used bit is the first character.
class SetFamily {
 public:
  SetFamily() = default;
  SetFamily(unsigned universe_bits, std::vector<std::uint64_t> members);

  unsigned universe_bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<std::uint64_t>& members() const noexcept { return members_; }
  bool contains(std::uint64_t x) const;
  bool operator==(const SetFamily&) const = default;

 private:
  unsigned bits_ = 0;
  std::vector<std::uint64_t> members_;  // sorted
};

// ---------------------------------------------------------------------------
// Text formats. Parsers throw ParseError carrying the offending line;
// serializers emit the canonical form accepted back by the parsers.

CnfFormula parse_dimacs(std::string_view text);
std::string serialize_dimacs(const CnfFormula& formula);

/// "n m" then one "u v [w]" line per edge; w may be a decimal or "a/b".
Graph parse_edge_list(std::string_view text);
std::string serialize_edge_list(const Graph& graph);

/// "n m" then one "k v1 ... vk" line per edge.
Hypergraph parse_hypergraph(std::string_view text);
std::string serialize_hypergraph(const Hypergraph& hypergraph);

/// "n" then n comma-separated rows.
IntMatrix parse_int_matrix(std::string_view text);
BinaryMatrix parse_binary_matrix(std::string_view text);
std::string serialize_matrix(const IntMatrix& matrix);
std::string serialize_matrix(const BinaryMatrix& matrix);

/// "n" then n comma-separated rows of reals (one vector per row).
UnitVectors parse_unit_vectors(std::string_view text);
std::string serialize_unit_vectors(const UnitVectors& vectors);

/// "l m" then m bit strings of length l.
SetFamily parse_set_family(std::string_view text);
std::string serialize_set_family(const SetFamily& family);

std::string read_file(const std::string& path);

// ---------------------------------------------------------------------------
// Generators. All are pure functions of their parameters and seed.

CnfFormula gen_random_kcnf(std::size_t n, std::size_t m, std::size_t k,
                           std::size_t max_intersections, std::uint64_t seed);
Graph gen_random_regular(std::size_t n, std::size_t k, std::uint64_t seed);
/// Uniform simple graph with exactly m edges.
Graph gen_random_graph(std::size_t n, std::size_t m, std::uint64_t seed);
Graph gen_hypercube(unsigned dim);
/// n x n matrix whose n^2/k values each occur exactly k times.
IntMatrix gen_latin_matrix(std::size_t n, std::size_t k, std::uint64_t seed);
BinaryMatrix gen_binary_matrix(std::size_t n, std::uint64_t seed);
UnitVectors gen_unit_vectors(std::size_t n, std::size_t dim, std::uint64_t seed);
SetFamily gen_set_family(unsigned bits, std::size_t m, std::uint64_t seed);
Hypergraph gen_random_hypergraph(std::size_t n, std::size_t m, std::size_t k,
                                 std::size_t max_intersections, std::uint64_t seed);

enum class TransitiveKind { Cycle, Hypercube, Complete };

std::string to_string(TransitiveKind kind);
TransitiveKind parse_transitive_kind(std::string_view name);

/// Cycle C_size, hypercube Q_size or complete graph K_size.
Graph gen_vertex_transitive(TransitiveKind kind, std::size_t size);

Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph petersen_graph();

/// Small named graphs used by the CLI and test corpora: "triangle", "edge",
/// "petersen", "cycleN", "completeN", "pathN", "starN", "hypercubeN".
Graph named_graph(std::string_view name);

}  // namespace derand
