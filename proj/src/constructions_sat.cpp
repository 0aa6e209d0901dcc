// k-SAT, Max-3SAT and the two hypergraph 2-colouring constructions.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "derand/constructions.hpp"
#include "derand/error.hpp"
#include "enumerate.hpp"

namespace derand {

__extension__ using u128 = unsigned __int128;

using detail::fmt_double;

namespace {

constexpr double kE = std::numbers::e;

BitAssignment bits_from(std::span<const std::uint32_t> digits) {
  return BitAssignment{std::vector<std::uint8_t>(digits.begin(), digits.end())};
}

void uniform_bits(Construction& c, std::size_t n) {
  c.sample = [n](RngStream& rng) -> Candidate {
    BitAssignment a;
    a.bits.resize(n);
    for (auto& b : a.bits) b = rng.coin();
    return a;
  };
  detail::set_product_enumerator(c, detail::uniform_digits(n, 2), bits_from);
}

std::vector<std::size_t> hyperedge_degrees(const Hypergraph& h) {
  std::vector<std::vector<std::size_t>> by_vertex(h.num_vertices());
  for (std::size_t e = 0; e < h.num_edges(); ++e)
    for (auto v : h.edges()[e]) by_vertex[v].push_back(e);
  std::vector<std::size_t> deg(h.num_edges(), 0);
  std::vector<std::size_t> stamp(h.num_edges(), SIZE_MAX);
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    stamp[e] = e;
    for (auto v : h.edges()[e])
      for (auto f : by_vertex[v])
        if (stamp[f] != e) {
          stamp[f] = e;
          ++deg[e];
        }
  }
  return deg;
}

void uniform_coloring(Construction& c, std::size_t n, std::size_t colors) {
  if (colors == 0) throw InvalidArgument(c.name + ": need at least one color");
  c.sample = [n, colors](RngStream& rng) -> Candidate {
    Coloring col;
    col.colors.resize(n);
    for (auto& x : col.colors) x = static_cast<std::uint32_t>(rng.below(colors));
    return col;
  };
  detail::set_product_enumerator(c, detail::uniform_digits(n, colors),
                                 [](std::span<const std::uint32_t> d) -> Candidate {
                                   return Coloring{{d.begin(), d.end()}};
                                 });
}

}  // namespace

const std::vector<std::string>& construction_names() {
  static const std::vector<std::string> names = {
      "ksat",  "hyper-union", "hyper-lll",      "cycles",          "frugal",   "coloring",
      "maxcut", "max3sat",    "balance-matrix", "balance-vectors", "indepset", "domset",
      "bloom", "latin",       "funcmin",        "superset"};
  return names;
}

bool hyperedges_bichromatic(const Hypergraph& hypergraph, const std::vector<std::uint32_t>& colors) {
  for (const auto& e : hypergraph.edges()) {
    bool mono = true;
    for (auto v : e) mono = mono && colors[v] == colors[e.front()];
    if (mono) return false;
  }
  return true;
}

std::size_t union_bound_colors(std::size_t edges, std::size_t k) {
  if (k < 2) throw InvalidArgument("union_bound_colors: edges must have at least 2 vertices");
  const u128 target = 2 * static_cast<u128>(edges);
  for (std::size_t c = 1;; ++c) {
    u128 power = 1;
    for (std::size_t i = 0; i + 1 < k && power < target; ++i) power *= c;
    if (power >= target) return c;
  }
}

Construction build_ksat(const CnfFormula& formula, std::size_t k) {
  Construction c;
  c.name = "ksat";
  const std::size_t m = formula.num_clauses();
  c.params = {{"vars", formula.num_vars()}, {"clauses", m}, {"k", k}};
  c.claimed_prob = std::pow(1.0 - kE / std::ldexp(1.0, static_cast<int>(k)), static_cast<double>(m));
  c.claimed_expr = "(1 - e/2^k)^m";

  if (k < 3) c.premise.fail("k must be at least 3");
  if (!formula.uniform(k)) c.premise.fail("every clause must have exactly k literals");
  const auto degrees = clause_intersection_degrees(formula);
  const std::size_t d = degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
  if (k >= 1 && k < 60) {
    const double two_k = std::ldexp(1.0, static_cast<int>(k));
    const auto limit = static_cast<long long>(std::floor(two_k / kE)) - 1;
    if (static_cast<long long>(d) > limit)
      c.premise.fail("clause intersection degree " + std::to_string(d) + " exceeds floor(2^k/e)-1 = " +
                     std::to_string(limit));
    c.premise.lll = symmetric_lll(1.0 / two_k, static_cast<double>(d), m);
    if (!c.premise.lll->guaranteed)
      c.premise.fail("e*p*(d+1) = " + fmt_double(c.premise.lll->premise_value) + " > 1");
  }

  uniform_bits(c, formula.num_vars());
  c.is_good = [formula](const Candidate& cand) {
    return formula.satisfied(std::get<BitAssignment>(cand).bits);
  };
  c.validate_solution = c.is_good;
  return c;
}

Construction build_max_3sat(const CnfFormula& formula) {
  Construction c;
  c.name = "max3sat";
  const std::size_t m = formula.num_clauses();
  c.params = {{"vars", formula.num_vars()}, {"clauses", m}};
  c.claimed_prob = 1.0 / 8.0;
  c.claimed_expr = "1/8";
  if (!formula.uniform(3)) c.premise.fail("every clause must have exactly 3 distinct variables");

  uniform_bits(c, formula.num_vars());
  c.is_good = [formula, m](const Candidate& cand) {
    const auto sat = formula.count_satisfied(std::get<BitAssignment>(cand).bits);
    return m == 0 || 7 * sat > 6 * m;
  };
  c.validate_solution = c.is_good;
  c.statistic = [formula](const Candidate& cand) {
    return static_cast<double>(formula.count_satisfied(std::get<BitAssignment>(cand).bits));
  };
  c.statistic_name = "satisfied clauses";
  c.statistic_expected = 7.0 * static_cast<double>(m) / 8.0;
  return c;
}

Construction build_hypergraph_color_union(const Hypergraph& hypergraph) {
  Construction c;
  c.name = "hyper-union";
  const std::size_t m = hypergraph.num_edges();
  const std::size_t k = hypergraph.max_edge_size();
  c.claimed_prob = 0.5;
  c.claimed_expr = "1 - m * C^(1-k) >= 1/2";

  std::size_t colors = 1;
  if (m > 0) {
    if (!hypergraph.uniform()) c.premise.fail("hypergraph must be k-uniform");
    if (hypergraph.min_edge_size() < 2) c.premise.fail("edges must have at least 2 vertices");
    if (k >= 2) colors = union_bound_colors(m, k);
  }
  c.params = {{"vertices", hypergraph.num_vertices()}, {"edges", m}, {"k", k}, {"colors", colors}};

  uniform_coloring(c, hypergraph.num_vertices(), colors);
  c.is_good = [hypergraph](const Candidate& cand) {
    return hyperedges_bichromatic(hypergraph, std::get<Coloring>(cand).colors);
  };
  c.validate_solution = c.is_good;
  return c;
}

Construction build_hypergraph_2color_lll(const Hypergraph& hypergraph) {
  Construction c;
  c.name = "hyper-lll";
  const std::size_t m = hypergraph.num_edges();
  const std::size_t k = hypergraph.min_edge_size();
  c.params = {{"vertices", hypergraph.num_vertices()}, {"edges", m}, {"k", k}};
  c.claimed_expr = "(1 - e/2^(k-1))^m";
  c.claimed_prob = 1.0;

  if (m > 0) {
    if (k < 4) c.premise.fail("minimum edge size must be at least 4");
    const auto degrees = hyperedge_degrees(hypergraph);
    const std::size_t d = *std::max_element(degrees.begin(), degrees.end());
    const double half = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(k, 1000)) - 1);
    c.claimed_prob = std::max(0.0, std::pow(1.0 - kE / half, static_cast<double>(m)));
    const double limit = half / kE - 1.0;
    if (static_cast<double>(d) > limit + 1e-12)
      c.premise.fail("edge intersection degree " + std::to_string(d) + " exceeds 2^(k-1)/e - 1 = " +
                     fmt_double(limit));
    c.premise.lll = symmetric_lll(1.0 / half, static_cast<double>(d), m);
    if (!c.premise.lll->guaranteed)
      c.premise.fail("e*p*(d+1) = " + fmt_double(c.premise.lll->premise_value) + " > 1");
  }

  uniform_coloring(c, hypergraph.num_vertices(), 2);
  c.is_good = [hypergraph](const Candidate& cand) {
    return hyperedges_bichromatic(hypergraph, std::get<Coloring>(cand).colors);
  };
  c.validate_solution = c.is_good;
  return c;
}

}  // namespace derand
