#include "derand/routing.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "derand/error.hpp"
#include "derand/rng.hpp"

namespace derand {

namespace {

void check_dim(unsigned dim) {
  if (dim == 0 || dim > 20) throw InvalidArgument("hypercube dimension must be in [1, 20]");
}

void check_map(const NodeMap& map, unsigned dim, const char* what) {
  if (map.size() != (std::size_t{1} << dim))
    throw InvalidArgument(std::string(what) + " must map all " + std::to_string(1u << dim) + " nodes");
  for (auto v : map)
    if (v >= map.size()) throw InvalidArgument(std::string(what) + " names a node outside the cube");
}

std::uint32_t rotate_left(std::uint32_t x, unsigned by, unsigned dim) {
  by %= dim;
  const std::uint32_t mask = (dim == 32) ? UINT32_MAX : ((1u << dim) - 1);
  return ((x << by) | (x >> (dim - by))) & mask;
}

}  // namespace

std::vector<std::uint32_t> bit_fixing_path(std::uint32_t src, std::uint32_t dst, unsigned dim) {
  check_dim(dim);
  if (src >> dim || dst >> dim) throw InvalidArgument("node outside the cube");
  std::vector<std::uint32_t> path{src};
  for (unsigned b = dim; b-- > 0;) {
    const std::uint32_t bit = 1u << b;
    if ((src ^ dst) & bit) {
      src ^= bit;
      path.push_back(src);
    }
  }
  return path;
}

NodeMap named_permutation(std::string_view name, unsigned dim) {
  check_dim(dim);
  NodeMap map(std::size_t{1} << dim);
  for (std::uint32_t i = 0; i < map.size(); ++i) {
    if (name == "identity") {
      map[i] = i;
    } else if (name == "reversal") {
      std::uint32_t r = 0;
      for (unsigned b = 0; b < dim; ++b)
        if (i >> b & 1u) r |= 1u << (dim - 1 - b);
      map[i] = r;
    } else if (name == "transpose") {
      map[i] = rotate_left(i, (dim + 1) / 2, dim);
    } else {
      throw InvalidArgument("unknown permutation '" + std::string(name) +
                            "' (expected identity, reversal or transpose)");
    }
  }
  return map;
}

NodeMap parse_destination_map(std::string_view text, unsigned dim) {
  check_dim(dim);
  const std::size_t n = std::size_t{1} << dim;
  NodeMap map(n, UINT32_MAX);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long i = 0, d = 0;
    if (!(fields >> i)) continue;
    std::string extra;
    if (!(fields >> d) || (fields >> extra))
      throw ParseError(lineno, "expected 'i d(i)'");
    if (i < 0 || d < 0 || static_cast<std::size_t>(i) >= n || static_cast<std::size_t>(d) >= n)
      throw ParseError(lineno, "node outside the cube");
    if (map[static_cast<std::size_t>(i)] != UINT32_MAX) throw ParseError(lineno, "node listed twice");
    map[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(d);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (map[i] == UINT32_MAX) throw ParseError(lineno, "no destination for node " + std::to_string(i));
  return map;
}

bool is_permutation(const NodeMap& map) {
  std::vector<std::uint8_t> hit(map.size(), 0);
  for (auto v : map) {
    if (v >= map.size() || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

RoutingRun simulate_two_phase(unsigned dim, const NodeMap& dest, const NodeMap& sigma,
                              const SimulationOptions& options) {
  check_dim(dim);
  check_map(dest, dim, "destination map");
  check_map(sigma, dim, "intermediate map");
  const std::uint32_t n = static_cast<std::uint32_t>(dest.size());
  const std::uint32_t max_steps = options.max_steps.value_or(100 * dim);

  // Full route per packet and the index at which phase 2 begins.
  std::vector<std::vector<std::uint32_t>> route(n);
  std::vector<std::size_t> turn(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    route[i] = bit_fixing_path(i, sigma[i], dim);
    turn[i] = route[i].size() - 1;
    const auto second = bit_fixing_path(sigma[i], dest[i], dim);
    route[i].insert(route[i].end(), second.begin() + 1, second.end());
  }

  std::vector<std::uint64_t> priority(n);
  for (std::uint32_t i = 0; i < n; ++i)
    priority[i] = options.tie_rule.kind == TieRule::Kind::Seeded ? mix64(options.tie_rule.seed ^ mix64(i)) : i;
  auto before = [&](std::uint32_t a, std::uint32_t b) {
    return priority[a] != priority[b] ? priority[a] < priority[b] : a < b;
  };

  RoutingRun run;
  run.permutation = is_permutation(dest);
  run.delivery_time.assign(n, 0);
  std::vector<std::size_t> pos(n, 0);
  std::vector<std::deque<std::uint32_t>> queue(static_cast<std::size_t>(n) * dim);
  auto edge_of = [&](std::uint32_t p) {
    const std::uint32_t from = route[p][pos[p]], to = route[p][pos[p] + 1];
    unsigned bit = 0;
    while (((from ^ to) >> bit) != 1u) ++bit;
    return static_cast<std::size_t>(from) * dim + bit;
  };

  std::vector<std::uint32_t> arriving(n);
  std::iota(arriving.begin(), arriving.end(), 0u);
  std::sort(arriving.begin(), arriving.end(), before);
  std::uint32_t delivered = 0;
  auto settle = [&](std::uint32_t step) {
    for (auto p : arriving) {
      if (pos[p] + 1 == route[p].size()) {
        run.delivery_time[p] = step;
        ++delivered;
      } else {
        queue[edge_of(p)].push_back(p);
      }
    }
    run.in_flight.push_back(n - delivered);
    run.delivered.push_back(delivered);
  };
  settle(0);

  std::uint32_t step = 0;
  while (delivered < n) {
    if (step == max_steps) {
      run.truncated = true;
      break;
    }
    ++step;
    arriving.clear();
    for (auto& q : queue) {
      if (q.empty()) continue;
      const auto p = q.front();
      q.pop_front();
      if (options.trace)
        run.hops.push_back({step, p, route[p][pos[p]], route[p][pos[p] + 1],
                            static_cast<std::uint8_t>(pos[p] < turn[p] ? 1 : 2)});
      ++pos[p];
      arriving.push_back(p);
    }
    std::sort(arriving.begin(), arriving.end(), before);
    settle(step);
  }
  run.steps = step;
  run.makespan = run.truncated ? step : *std::max_element(run.delivery_time.begin(), run.delivery_time.end());
  return run;
}

Construction build_routing_construction(unsigned dim, const NodeMap& dest, TieRule tie_rule) {
  check_dim(dim);
  check_map(dest, dim, "destination map");
  Construction c;
  c.name = "routing";
  const std::size_t n = dest.size();
  const std::uint32_t limit = 14 * dim;
  c.params = {{"dim", dim}, {"nodes", n}, {"step_limit", limit}};
  c.claimed_prob = 1.0 - 1.0 / static_cast<double>(n);
  c.claimed_expr = "1 - 1/N";
  if (!is_permutation(dest))
    c.premise.fail("destinations are not a permutation: the 14n guarantee assumes a permutation");

  c.sample = [n](RngStream& rng) -> Candidate {
    NumberTuple t;
    t.values.resize(n);
    for (auto& v : t.values) v = rng.below(n);
    return t;
  };
  c.is_good = [dim, dest, tie_rule, limit](const Candidate& cand) {
    const auto& v = std::get<NumberTuple>(cand).values;
    const NodeMap sigma(v.begin(), v.end());
    SimulationOptions opt;
    opt.tie_rule = tie_rule;
    const auto run = simulate_two_phase(dim, dest, sigma, opt);
    return !run.truncated && run.makespan <= limit;
  };
  c.validate_solution = c.is_good;
  c.statistic = [dim, dest, tie_rule](const Candidate& cand) {
    const auto& v = std::get<NumberTuple>(cand).values;
    SimulationOptions opt;
    opt.tie_rule = tie_rule;
    return static_cast<double>(simulate_two_phase(dim, dest, NodeMap(v.begin(), v.end()), opt).makespan);
  };
  c.statistic_name = "makespan";
  return c;
}

}  // namespace derand
