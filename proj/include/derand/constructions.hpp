#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "derand/construction.hpp"
#include "derand/instances.hpp"

namespace derand {

// Builders. Each returns a ready Construction; a violated premise is
// reported through Construction::premise and never throws. Malformed
// arguments that make the sampler itself undefined (zero colors, an empty
// distribution) throw InvalidArgument.

Construction build_ksat(const CnfFormula& formula, std::size_t k);
Construction build_hypergraph_color_union(const Hypergraph& hypergraph);
Construction build_hypergraph_2color_lll(const Hypergraph& hypergraph);
Construction build_disjoint_cycles(const Graph& graph, std::size_t k);
Construction build_frugal_coloring(const Graph& graph, std::size_t beta, std::size_t colors);
Construction build_graph_coloring(const Graph& graph, std::size_t colors);
Construction build_max_cut(const Graph& graph);
Construction build_max_3sat(const CnfFormula& formula);
Construction build_balance_matrix(const BinaryMatrix& matrix);
Construction build_balance_unit_vectors(const UnitVectors& vectors);
Construction build_independent_set(const Graph& graph);
Construction build_dominating_set(const Graph& graph);
Construction build_bloom(const SetFamily& members, std::uint32_t n_bits);
Construction build_latin_transversal(const IntMatrix& matrix, std::size_t k);

/// Finite distribution over nonnegative integers.
struct DiscreteDistribution {
  std::vector<std::uint64_t> values;
  std::vector<double> probs;

  /// Throws InvalidArgument unless probs are nonnegative and sum to 1.
  void validate() const;
  static DiscreteDistribution uniform(std::uint64_t lo, std::uint64_t hi);
};

/// Cost function; +infinity stands for an infinite value.
using CostFn = std::function<double(std::uint64_t)>;

Construction build_function_min(const DiscreteDistribution& dist, std::vector<CostFn> fs);
Construction build_super_set(const SetFamily& target, unsigned m);

/// The stable identifiers, in presentation order.
const std::vector<std::string>& construction_names();

// Quantities shared with the solvers, the CLI and the tests.

/// floor(k / (3 ln k)), at least 1.
std::size_t disjoint_cycle_components(std::size_t k);
/// Smallest C >= 1 with C^(k-1) >= 2 * edges.
std::size_t union_bound_colors(std::size_t edges, std::size_t k);
/// ceil(n_bits / members), at least 1.
std::size_t bloom_hash_count(std::uint32_t n_bits, std::size_t members);

double cut_weight(const Graph& graph, const std::vector<std::uint32_t>& parts);
bool is_independent_set(const Graph& graph, const std::vector<std::uint8_t>& members);
bool is_dominating_set(const Graph& graph, const std::vector<std::uint8_t>& members);
bool is_weakly_frugal(const Graph& graph, const std::vector<std::uint32_t>& colors,
                      std::size_t beta);
bool is_proper_coloring(const Graph& graph, const std::vector<std::uint32_t>& colors);
bool hyperedges_bichromatic(const Hypergraph& hypergraph, const std::vector<std::uint32_t>& colors);
/// Vertex-disjoint simple cycles (length >= 3) of the graph, each inside a
/// single part and no two in the same part, one for each of `parts` parts.
bool valid_disjoint_cycles(const Graph& graph, const std::vector<std::uint32_t>& partition,
                           std::size_t parts, const CycleList& cycles);
/// Some simple cycle of length >= 3 inside the vertices of `part`.
std::vector<std::uint32_t> find_cycle_in_part(const Graph& graph,
                                              const std::vector<std::uint32_t>& partition,
                                              std::uint32_t part);
/// Bit vector of the filter described by a hash family.
std::vector<std::uint8_t> bloom_filter_bits(const HashFamily& hashes);
/// h_i(x): tabulated for members, derived from the salt otherwise.
std::uint32_t bloom_hash(const HashFamily& hashes, const SetFamily& members, std::size_t i,
                         std::uint64_t x);
bool bloom_accepts(const HashFamily& hashes, const SetFamily& members, std::uint64_t x);

bool is_latin_transversal(const IntMatrix& matrix, const std::vector<std::uint32_t>& perm);

}  // namespace derand
