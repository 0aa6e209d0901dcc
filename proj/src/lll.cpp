#include "derand/lll.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "derand/error.hpp"

namespace derand {

void BadEventSystem::validate() const {
  if (!weights.empty() && weights.size() != domains.size())
    throw InstanceError("per-variable weights must cover every variable");
  for (std::size_t i = 0; i < domains.size(); ++i) {
    if (domains[i] == 0) throw InstanceError("variable domains must be non-empty");
    if (!weights.empty() && !weights[i].empty() && weights[i].size() != domains[i])
      throw InstanceError("variable " + std::to_string(i) + " weights do not match its domain");
  }
  for (std::size_t e = 0; e < events.size(); ++e) {
    const auto& s = events[e].support;
    if (s.empty()) throw InstanceError("event " + std::to_string(e) + " has an empty support");
    for (auto v : s)
      if (v >= domains.size())
        throw InstanceError("event " + std::to_string(e) + " refers to variable " +
                            std::to_string(v) + " out of range");
    if (!events[e].violated) throw InstanceError("event " + std::to_string(e) + " has no predicate");
  }
}

std::uint32_t BadEventSystem::sample_var(std::size_t var, RngStream& rng) const {
  if (weights.empty() || weights[var].empty())
    return static_cast<std::uint32_t>(rng.below(domains[var]));
  return static_cast<std::uint32_t>(rng.discrete(weights[var]));
}

double BadEventSystem::value_probability(std::size_t var, std::uint32_t value) const {
  if (weights.empty() || weights[var].empty()) return 1.0 / domains[var];
  double total = 0.0;
  for (double w : weights[var]) total += w;
  return weights[var][value] / total;
}

std::vector<std::vector<std::size_t>> dependency_lists(const BadEventSystem& system) {
  std::vector<std::vector<std::size_t>> by_var(system.num_vars());
  for (std::size_t e = 0; e < system.events.size(); ++e)
    for (auto v : system.events[e].support) by_var[v].push_back(e);
  std::vector<std::vector<std::size_t>> lists(system.events.size());
  std::vector<std::size_t> stamp(system.events.size(), SIZE_MAX);
  for (std::size_t e = 0; e < system.events.size(); ++e) {
    stamp[e] = e;
    for (auto v : system.events[e].support)
      for (auto other : by_var[v])
        if (stamp[other] != e) {
          stamp[other] = e;
          lists[e].push_back(other);
        }
    std::sort(lists[e].begin(), lists[e].end());
  }
  return lists;
}

DependencyDegrees dependency_degree(const BadEventSystem& system) {
  DependencyDegrees out;
  for (const auto& l : dependency_lists(system)) {
    out.degree.push_back(l.size());
    out.d_max = std::max(out.d_max, l.size());
  }
  return out;
}

LllReport symmetric_lll(double p, double d, std::size_t n_events) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("symmetric_lll: p must lie in [0,1]");
  if (d < 0.0) throw InvalidArgument("symmetric_lll: d must be nonnegative");
  LllReport r;
  r.rule = "symmetric: e*p*(d+1) <= 1";
  r.p_max = p;
  r.d_max = d;
  r.premise_value = std::numbers::e * p * (d + 1.0);
  r.guaranteed = r.premise_value <= 1.0 + 1e-12;
  r.bound = n_events == 0 ? 1.0 : std::pow(1.0 - 1.0 / (d + 1.0), static_cast<double>(n_events));
  return r;
}

LllReport lopsided_lll(double p, double d, std::size_t n_events) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("lopsided_lll: p must lie in [0,1]");
  if (d < 0.0) throw InvalidArgument("lopsided_lll: d must be nonnegative");
  LllReport r;
  r.rule = "lopsided: 4*d*p <= 1 (negative correlation assumed)";
  r.p_max = p;
  r.d_max = d;
  r.premise_value = 4.0 * d * p;
  r.guaranteed = r.premise_value <= 1.0 + 1e-12;
  r.bound = n_events == 0 ? 1.0 : std::pow(std::max(0.0, 1.0 - 2.0 * p), static_cast<double>(n_events));
  return r;
}

double event_probability(const BadEventSystem& system, std::size_t event) {
  const auto& ev = system.events.at(event);
  double space = 1.0;
  for (auto v : ev.support) space *= system.domains[v];
  if (space > double(1u << 22)) throw Refusal("event support space too large to enumerate");
  std::vector<std::uint32_t> assignment(system.num_vars(), 0);
  std::vector<std::uint32_t> digits(ev.support.size(), 0);
  double total = 0.0;
  while (true) {
    double prob = 1.0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      assignment[ev.support[i]] = digits[i];
      prob *= system.value_probability(ev.support[i], digits[i]);
    }
    if (prob > 0.0 && ev.violated(assignment)) total += prob;
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == system.domains[ev.support[i]]) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return total;
}

LllReport analyze_symmetric(const BadEventSystem& system) {
  system.validate();
  double p = 0.0;
  for (std::size_t e = 0; e < system.events.size(); ++e) p = std::max(p, event_probability(system, e));
  const auto deg = dependency_degree(system);
  return symmetric_lll(p, static_cast<double>(deg.d_max), system.events.size());
}

double exact_avoidance_probability(const BadEventSystem& system) {
  system.validate();
  double space = 1.0;
  for (auto d : system.domains) space *= d;
  if (space > double(1u << 20)) throw Refusal("assignment space too large to enumerate");
  std::vector<std::uint32_t> a(system.num_vars(), 0);
  double total = 0.0;
  while (true) {
    double prob = 1.0;
    for (std::size_t v = 0; v < a.size(); ++v) prob *= system.value_probability(v, a[v]);
    if (prob > 0.0 &&
        std::none_of(system.events.begin(), system.events.end(),
                     [&](const BadEvent& e) { return e.violated(a); }))
      total += prob;
    std::size_t i = 0;
    while (i < a.size() && ++a[i] == system.domains[i]) a[i++] = 0;
    if (i == a.size()) break;
  }
  return total;
}

std::optional<std::size_t> find_nonlocal_event(const BadEventSystem& system, std::uint64_t seed,
                                               std::size_t samples_per_event) {
  system.validate();
  for (std::size_t e = 0; e < system.events.size(); ++e) {
    const auto& ev = system.events[e];
    for (std::size_t s = 0; s < samples_per_event; ++s) {
      RngStream rng(seed, e * samples_per_event + s);
      std::vector<std::uint32_t> a(system.num_vars());
      for (std::size_t v = 0; v < a.size(); ++v) a[v] = system.sample_var(v, rng);
      const bool before = ev.violated(a);
      for (std::size_t v = 0; v < a.size(); ++v)
        if (std::find(ev.support.begin(), ev.support.end(), v) == ev.support.end())
          a[v] = system.sample_var(v, rng);
      if (ev.violated(a) != before) return e;
    }
  }
  return std::nullopt;
}

std::uint64_t default_resample_budget(const BadEventSystem& system) {
  return 64 * (static_cast<std::uint64_t>(system.events.size()) + 1);
}

MoserTardosResult moser_tardos(const BadEventSystem& system, std::uint64_t seed,
                               std::optional<std::uint64_t> max_resamples) {
  system.validate();
  MoserTardosResult result;
  result.budget = max_resamples.value_or(default_resample_budget(system));
  RngStream rng(seed, 0);
  auto& a = result.assignment;
  a.resize(system.num_vars());
  for (std::size_t v = 0; v < a.size(); ++v) a[v] = system.sample_var(v, rng);

  std::vector<std::vector<std::size_t>> by_var(system.num_vars());
  for (std::size_t e = 0; e < system.events.size(); ++e)
    for (auto v : system.events[e].support) by_var[v].push_back(e);

  std::set<std::size_t> violated;
  for (std::size_t e = 0; e < system.events.size(); ++e)
    if (system.events[e].violated(a)) violated.insert(e);

  std::vector<std::uint64_t> stamp(system.events.size(), 0);
  while (!violated.empty()) {
    if (result.resamples >= result.budget) {
      result.violated.assign(violated.begin(), violated.end());
      return result;
    }
    const std::size_t e = *violated.begin();
    for (auto v : system.events[e].support) a[v] = system.sample_var(v, rng);
    const std::uint64_t tick = ++result.resamples;
    for (auto v : system.events[e].support)
      for (auto other : by_var[v]) {
        if (stamp[other] == tick) continue;
        stamp[other] = tick;
        if (system.events[other].violated(a))
          violated.insert(other);
        else
          violated.erase(other);
      }
  }
  result.solved = true;
  return result;
}

}  // namespace derand
