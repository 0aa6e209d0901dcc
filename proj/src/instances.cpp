#include "derand/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "derand/error.hpp"

namespace derand {

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.u >= n_ || e.v >= n_)
      throw InstanceError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") has an endpoint outside [0," + std::to_string(n_) + ")");
    if (e.u == e.v) throw InstanceError("self-loop at vertex " + std::to_string(e.u));
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
      throw InstanceError("edge weights must be finite and nonnegative");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::vector<std::size_t> order(edges_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(edges_[a].u, edges_[a].v) < std::pair(edges_[b].u, edges_[b].v);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& a = edges_[order[i - 1]];
    const auto& b = edges_[order[i]];
    if (a.u == b.u && a.v == b.v)
      throw InstanceError("duplicate edge (" + std::to_string(a.u) + "," + std::to_string(a.v) + ")");
  }
  std::vector<std::size_t> deg(n_, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adjacency_.assign(offsets_[n_], 0);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = e.v;
    adjacency_[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n_; ++v)
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
}

std::span<const std::uint32_t> Graph::neighbors(std::uint32_t v) const {
  if (v >= n_) throw InvalidArgument("vertex out of range");
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < n_; ++v) best = std::max(best, offsets_[v + 1] - offsets_[v]);
  return best;
}

std::size_t Graph::min_degree() const noexcept {
  if (n_ == 0) return 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t v = 0; v < n_; ++v) best = std::min(best, offsets_[v + 1] - offsets_[v]);
  return best;
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<std::size_t> Graph::edge_index(std::uint32_t u, std::uint32_t v) const {
  if (u > v) std::swap(u, v);
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].u == u && edges_[i].v == v) return i;
  return std::nullopt;
}

double Graph::total_weight() const noexcept {
  double w = 0.0;
  for (const auto& e : edges_) w += e.weight;
  return w;
}

bool Graph::weighted() const noexcept {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight != 1.0; });
}

std::optional<std::size_t> Graph::regular_degree() const noexcept {
  if (n_ == 0) return std::nullopt;
  const std::size_t d = offsets_[1] - offsets_[0];
  for (std::size_t v = 1; v < n_; ++v)
    if (offsets_[v + 1] - offsets_[v] != d) return std::nullopt;
  return d;
}

bool Graph::connected() const {
  if (n_ == 0) return true;
  std::vector<char> seen(n_, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto u : neighbors(v))
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == n_;
}

bool Graph::bipartite() const {
  std::vector<int> side(n_, -1);
  for (std::uint32_t s = 0; s < n_; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<std::uint32_t> q;
    q.push(s);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (auto u : neighbors(v)) {
        if (side[u] < 0) {
          side[u] = 1 - side[v];
          q.push(u);
        } else if (side[u] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hypergraph

Hypergraph::Hypergraph(std::size_t n, std::vector<std::vector<std::uint32_t>> edges)
    : n_(n), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.empty()) throw InstanceError("hypergraph edges must be non-empty");
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw InstanceError("hypergraph edge repeats a vertex");
    if (e.back() >= n_) throw InstanceError("hypergraph vertex out of range");
  }
}

std::size_t Hypergraph::min_edge_size() const noexcept {
  std::size_t k = edges_.empty() ? 0 : std::numeric_limits<std::size_t>::max();
  for (const auto& e : edges_) k = std::min(k, e.size());
  return k;
}

std::size_t Hypergraph::max_edge_size() const noexcept {
  std::size_t k = 0;
  for (const auto& e : edges_) k = std::max(k, e.size());
  return k;
}

// ---------------------------------------------------------------------------
// CnfFormula

CnfFormula::CnfFormula(std::size_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    std::vector<std::uint32_t> vars;
    for (const auto& lit : clauses_[c]) {
      if (lit.var >= num_vars_)
        throw InstanceError("clause " + std::to_string(c + 1) + " mentions variable " +
                            std::to_string(lit.var + 1) + " beyond " + std::to_string(num_vars_));
      vars.push_back(lit.var);
    }
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
      throw InstanceError("clause " + std::to_string(c + 1) +
                          " contains a variable more than once (duplicate-variable-in-clause)");
  }
}

bool CnfFormula::clause_satisfied(std::size_t c, std::span<const std::uint8_t> assignment) const {
  for (const auto& lit : clauses_[c])
    if (lit.satisfied_by(assignment)) return true;
  return false;
}

std::size_t CnfFormula::count_satisfied(std::span<const std::uint8_t> assignment) const {
  std::size_t count = 0;
  for (std::size_t c = 0; c < clauses_.size(); ++c) count += clause_satisfied(c, assignment);
  return count;
}

bool CnfFormula::satisfied(std::span<const std::uint8_t> assignment) const {
  for (std::size_t c = 0; c < clauses_.size(); ++c)
    if (!clause_satisfied(c, assignment)) return false;
  return true;
}

bool CnfFormula::uniform(std::size_t k) const noexcept {
  return std::all_of(clauses_.begin(), clauses_.end(),
                     [k](const Clause& c) { return c.size() == k; });
}

std::vector<std::size_t> clause_intersection_degrees(const CnfFormula& formula) {
  const auto& clauses = formula.clauses();
  std::vector<std::vector<std::size_t>> by_var(formula.num_vars());
  for (std::size_t c = 0; c < clauses.size(); ++c)
    for (const auto& lit : clauses[c]) by_var[lit.var].push_back(c);
  std::vector<std::size_t> degrees(clauses.size(), 0);
  std::vector<std::size_t> mark(clauses.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    mark[c] = c;
    for (const auto& lit : clauses[c])
      for (auto other : by_var[lit.var])
        if (mark[other] != c) {
          mark[other] = c;
          ++degrees[c];
        }
  }
  return degrees;
}

// ---------------------------------------------------------------------------
// Matrices, vectors, set families

IntMatrix::IntMatrix(std::size_t n, std::vector<std::int64_t> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) throw InstanceError("matrix must be square");
}

BinaryMatrix::BinaryMatrix(std::size_t n, std::vector<std::uint8_t> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) throw InstanceError("matrix must be square");
  for (auto b : entries_)
    if (b > 1) throw InstanceError("binary matrix entries must be 0 or 1");
}

UnitVectors::UnitVectors(std::vector<std::vector<double>> vectors) : vectors_(std::move(vectors)) {
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].size() != dim()) throw InstanceError("vectors must share one dimension");
    double sq = 0.0;
    for (double x : vectors_[i]) sq += x * x;
    if (std::abs(std::sqrt(sq) - 1.0) > kUnitNormTolerance)
      throw InstanceError("vector " + std::to_string(i) + " is not unit length");
  }
}

SetFamily::SetFamily(unsigned universe_bits, std::vector<std::uint64_t> members)
    : bits_(universe_bits), members_(std::move(members)) {
  if (bits_ > 63) throw InstanceError("set family universes are limited to 63 bits");
  for (auto x : members_)
    if (bits_ < 64 && (x >> bits_) != 0) throw InstanceError("member longer than universe_bits");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw InstanceError("set family members must be distinct");
}

bool SetFamily::contains(std::uint64_t x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

// ---------------------------------------------------------------------------
// Text parsing

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Non-blank lines, with '#' comments stripped.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto eol = text.find('\n');
    auto raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (!raw.empty()) lines.push_back({number, raw});
  }
  return lines;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (sep == ' ') {
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      if (j > i) out.push_back(s.substr(i, j - i));
      i = j;
    }
    return out;
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

template <class T>
T parse_int(std::string_view token, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(token) + "'");
  return value;
}

double parse_real(std::string_view token, std::size_t line) {
  std::string s(token);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    auto num = parse_int<std::int64_t>(token.substr(0, slash), line, "rational numerator");
    auto den = parse_int<std::int64_t>(token.substr(slash + 1), line, "rational denominator");
    if (den == 0) throw ParseError(line, "zero denominator");
    return static_cast<double>(num) / static_cast<double>(den);
  }
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw ParseError(line, "expected a real number, got '" + s + "'");
  return v;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Prefer the shortest representation that round-trips.
  for (int precision = 1; precision <= 17; ++precision) {
    char shorter[64];
    std::snprintf(shorter, sizeof shorter, "%.*g", precision, x);
    if (std::strtod(shorter, nullptr) == x) return shorter;
  }
  return buf;
}

// Wraps an invariant failure raised while building from parsed text.
template <class F>
auto rethrow_at(std::size_t line, F&& build) {
  try {
    return build();
  } catch (const InstanceError& e) {
    throw ParseError(line, e.what());
  }
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  std::optional<std::size_t> vars, expected;
  std::size_t header_line = 0;
  std::vector<Clause> clauses;
  Clause current;
  std::size_t number = 0;
  std::size_t last_line = 0;
  while (!text.empty()) {
    ++number;
    auto eol = text.find('\n');
    auto line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (line.empty() || line.front() == 'c') continue;
    if (line.front() == '%') break;
    if (line.front() == 'p') {
      auto tok = split(line, ' ');
      if (vars || tok.size() != 4 || tok[0] != "p" || tok[1] != "cnf")
        throw ParseError(number, "malformed header, expected 'p cnf <vars> <clauses>'");
      vars = parse_int<std::size_t>(tok[2], number, "variable count");
      expected = parse_int<std::size_t>(tok[3], number, "clause count");
      header_line = number;
      continue;
    }
    if (!vars) throw ParseError(number, "clause before 'p cnf' header");
    for (auto tok : split(line, ' ')) {
      auto lit = parse_int<std::int64_t>(tok, number, "literal");
      if (lit == 0) {
        std::vector<std::uint32_t> seen;
        for (const auto& l : current) seen.push_back(l.var);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
          throw ParseError(number, "duplicate-variable-in-clause");
        clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const auto var = static_cast<std::uint64_t>(lit < 0 ? -lit : lit);
      if (var > *vars)
        throw ParseError(number, "literal " + std::string(tok) + " out of range 1.." +
                                     std::to_string(*vars));
      current.push_back({static_cast<std::uint32_t>(var - 1), lit < 0});
    }
    last_line = number;
  }
  if (!vars) throw ParseError(0, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(last_line, "last clause is not terminated by 0");
  if (clauses.size() != *expected)
    throw ParseError(header_line, "header declares " + std::to_string(*expected) +
                                      " clauses but " + std::to_string(clauses.size()) +
                                      " were read");
  return rethrow_at(header_line, [&] { return CnfFormula(*vars, std::move(clauses)); });
}

std::string serialize_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  for (const auto& clause : formula.clauses()) {
    for (const auto& lit : clause) out << (lit.negated ? "-" : "") << lit.var + 1 << ' ';
    out << "0\n";
  }
  return out.str();
}

Graph parse_edge_list(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "empty edge list");
  auto head = split(lines[0].text, ' ');
  if (head.size() != 2) throw ParseError(lines[0].number, "expected header 'n m'");
  const auto n = parse_int<std::size_t>(head[0], lines[0].number, "vertex count");
  const auto m = parse_int<std::size_t>(head[1], lines[0].number, "edge count");
  if (n > std::numeric_limits<std::uint32_t>::max()) throw ParseError(lines[0].number, "index overflow");
  if (lines.size() - 1 != m)
    throw ParseError(lines[0].number, "header declares " + std::to_string(m) + " edges but " +
                                          std::to_string(lines.size() - 1) + " were given");
  std::vector<Edge> edges;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto ln = lines[i].number;
    auto tok = split(lines[i].text, ' ');
    if (tok.size() != 2 && tok.size() != 3) throw ParseError(ln, "expected 'u v [w]'");
    const auto u = parse_int<std::uint64_t>(tok[0], ln, "vertex");
    const auto v = parse_int<std::uint64_t>(tok[1], ln, "vertex");
    if (u >= n || v >= n) throw ParseError(ln, "vertex index overflow (n=" + std::to_string(n) + ")");
    if (u == v) throw ParseError(ln, "self-loop at vertex " + std::to_string(u));
    const double w = tok.size() == 3 ? parse_real(tok[2], ln) : 1.0;
    if (w < 0.0) throw ParseError(ln, "negative weight");
    const std::pair key{static_cast<std::uint32_t>(std::min(u, v)), static_cast<std::uint32_t>(std::max(u, v))};
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) throw ParseError(ln, "duplicate edge");
    seen.push_back(key);
    edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), w});
  }
  return rethrow_at(lines[0].number, [&] { return Graph(n, std::move(edges)); });
}

std::string serialize_edge_list(const Graph& graph) {
  std::ostringstream out;
  out << graph.num_vertices() << ' ' << graph.num_edges() << '\n';
  const bool weighted = graph.weighted();
  for (const auto& e : graph.edges()) {
    out << e.u << ' ' << e.v;
    if (weighted) out << ' ' << format_real(e.weight);
    out << '\n';
  }
  return out.str();
}

Hypergraph parse_hypergraph(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "empty hypergraph");
  auto head = split(lines[0].text, ' ');
  if (head.size() != 2) throw ParseError(lines[0].number, "expected header 'n m'");
  const auto n = parse_int<std::size_t>(head[0], lines[0].number, "vertex count");
  const auto m = parse_int<std::size_t>(head[1], lines[0].number, "edge count");
  if (lines.size() - 1 != m)
    throw ParseError(lines[0].number, "header declares " + std::to_string(m) + " edges but " +
                                          std::to_string(lines.size() - 1) + " were given");
  std::vector<std::vector<std::uint32_t>> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto ln = lines[i].number;
    auto tok = split(lines[i].text, ' ');
    if (tok.empty()) throw ParseError(ln, "expected 'k v1 ... vk'");
    const auto k = parse_int<std::size_t>(tok[0], ln, "edge size");
    if (k == 0 || tok.size() != k + 1)
      throw ParseError(ln, "edge size " + std::to_string(k) + " does not match vertex list");
    std::vector<std::uint32_t> edge;
    for (std::size_t j = 1; j <= k; ++j) {
      auto v = parse_int<std::uint64_t>(tok[j], ln, "vertex");
      if (v >= n) throw ParseError(ln, "vertex index overflow");
      edge.push_back(static_cast<std::uint32_t>(v));
    }
    edges.push_back(std::move(edge));
    rethrow_at(ln, [&] { return Hypergraph(n, {edges.back()}); });
  }
  return rethrow_at(lines[0].number, [&] { return Hypergraph(n, std::move(edges)); });
}

std::string serialize_hypergraph(const Hypergraph& hypergraph) {
  std::ostringstream out;
  out << hypergraph.num_vertices() << ' ' << hypergraph.num_edges() << '\n';
  for (const auto& e : hypergraph.edges()) {
    out << e.size();
    for (auto v : e) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

namespace {

template <class T, class Cell>
std::pair<std::size_t, std::vector<T>> parse_square(std::string_view text, Cell&& cell) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "empty matrix");
  const auto n = parse_int<std::size_t>(lines[0].text, lines[0].number, "dimension");
  if (lines.size() - 1 != n)
    throw ParseError(lines[0].number, "expected " + std::to_string(n) + " rows, got " +
                                          std::to_string(lines.size() - 1));
  std::vector<T> entries;
  entries.reserve(n * n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = split(lines[i].text, ',');
    if (cells.size() != n)
      throw ParseError(lines[i].number, "row has " + std::to_string(cells.size()) +
                                            " entries, expected " + std::to_string(n));
    for (auto c : cells) entries.push_back(cell(c, lines[i].number));
  }
  return {n, std::move(entries)};
}

}  // namespace

IntMatrix parse_int_matrix(std::string_view text) {
  auto [n, entries] = parse_square<std::int64_t>(text, [](std::string_view c, std::size_t ln) {
    return parse_int<std::int64_t>(c, ln, "integer");
  });
  return IntMatrix(n, std::move(entries));
}

BinaryMatrix parse_binary_matrix(std::string_view text) {
  auto [n, entries] = parse_square<std::uint8_t>(text, [](std::string_view c, std::size_t ln) {
    auto v = parse_int<int>(c, ln, "bit");
    if (v != 0 && v != 1) throw ParseError(ln, "binary matrix entries must be 0 or 1");
    return static_cast<std::uint8_t>(v);
  });
  return BinaryMatrix(n, std::move(entries));
}

std::string serialize_matrix(const IntMatrix& matrix) {
  std::ostringstream out;
  out << matrix.size() << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j) out << (j ? "," : "") << matrix.at(i, j);
    out << '\n';
  }
  return out.str();
}

std::string serialize_matrix(const BinaryMatrix& matrix) {
  std::ostringstream out;
  out << matrix.size() << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j)
      out << (j ? "," : "") << static_cast<int>(matrix.at(i, j));
    out << '\n';
  }
  return out.str();
}

UnitVectors parse_unit_vectors(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "empty vector list");
  const auto n = parse_int<std::size_t>(lines[0].text, lines[0].number, "vector count");
  if (lines.size() - 1 != n)
    throw ParseError(lines[0].number, "expected " + std::to_string(n) + " vectors");
  std::vector<std::vector<double>> vectors;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<double> v;
    for (auto c : split(lines[i].text, ',')) v.push_back(parse_real(c, lines[i].number));
    vectors.push_back(std::move(v));
    rethrow_at(lines[i].number, [&] { return UnitVectors({vectors.back()}); });
  }
  return rethrow_at(lines[0].number, [&] { return UnitVectors(std::move(vectors)); });
}

std::string serialize_unit_vectors(const UnitVectors& vectors) {
  std::ostringstream out;
  out << vectors.count() << '\n';
  for (const auto& v : vectors.vectors()) {
    for (std::size_t j = 0; j < v.size(); ++j) out << (j ? "," : "") << format_real(v[j]);
    out << '\n';
  }
  return out.str();
}

SetFamily parse_set_family(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "empty set family");
  auto head = split(lines[0].text, ' ');
  if (head.size() != 2) throw ParseError(lines[0].number, "expected header 'l m'");
  const auto bits = parse_int<unsigned>(head[0], lines[0].number, "string length");
  const auto m = parse_int<std::size_t>(head[1], lines[0].number, "member count");
  if (bits > 63) throw ParseError(lines[0].number, "string length above 63 is not supported");
  if (lines.size() - 1 != m)
    throw ParseError(lines[0].number, "expected " + std::to_string(m) + " members");
  std::vector<std::uint64_t> members;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto s = lines[i].text;
    if (s.size() != bits)
      throw ParseError(lines[i].number, "member has length " + std::to_string(s.size()) +
                                            ", expected " + std::to_string(bits));
    std::uint64_t x = 0;
    for (char c : s) {
      if (c != '0' && c != '1') throw ParseError(lines[i].number, "members must be bit strings");
      x = (x << 1) | static_cast<std::uint64_t>(c - '0');
    }
    if (std::find(members.begin(), members.end(), x) != members.end())
      throw ParseError(lines[i].number, "duplicate member");
    members.push_back(x);
  }
  return SetFamily(bits, std::move(members));
}

std::string serialize_set_family(const SetFamily& family) {
  std::ostringstream out;
  out << family.universe_bits() << ' ' << family.size() << '\n';
  for (auto x : family.members()) {
    for (unsigned b = family.universe_bits(); b > 0; --b) out << ((x >> (b - 1)) & 1u);
    out << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace derand
