#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "derand/rng.hpp"

namespace derand {

/// A bad event over discrete variables. `violated` receives the complete
/// assignment but must read only the variables listed in `support`.
struct BadEvent {
  std::vector<std::uint32_t> support;
  std::function<bool(std::span<const std::uint32_t>)> violated;
};

/// Discrete variables (variable i takes values in [0, domains[i])) and bad
/// events over them. `weights[i]`, when non-empty, gives the sampling
/// distribution of variable i; otherwise it is uniform.
struct BadEventSystem {
  std::vector<std::uint32_t> domains;
  std::vector<std::vector<double>> weights;
  std::vector<BadEvent> events;

  std::size_t num_vars() const noexcept { return domains.size(); }
  /// Throws InstanceError on empty or out-of-range supports.
  void validate() const;
  std::uint32_t sample_var(std::size_t var, RngStream& rng) const;
  double value_probability(std::size_t var, std::uint32_t value) const;
};

/// Degree of each event in the dependency graph where two events are
/// adjacent iff their supports intersect.
struct DependencyDegrees {
  std::vector<std::size_t> degree;
  std::size_t d_max = 0;
};

DependencyDegrees dependency_degree(const BadEventSystem& system);
std::vector<std::vector<std::size_t>> dependency_lists(const BadEventSystem& system);

struct LllReport {
  double p_max = 0.0;
  double d_max = 0.0;
  double premise_value = 0.0;
  /// Lower bound on the probability that no event occurs. Only binding
  /// when `guaranteed` is true.
  double bound = 1.0;
  bool guaranteed = true;
  std::string rule;
};

/// Symmetric local lemma: premise e*p*(d+1) <= 1 gives bound (1 - 1/(d+1))^n.
LllReport symmetric_lll(double p, double d, std::size_t n_events);

/// Lopsided local lemma: premise 4*d*p <= 1 gives bound (1 - 2p)^n. The
/// negative-correlation hypothesis cannot be checked mechanically and is
/// assumed by the caller.
LllReport lopsided_lll(double p, double d, std::size_t n_events);

/// Exact probability of one event, by enumerating its support. Refuses
/// supports whose joint domain exceeds 2^22 assignments.
double event_probability(const BadEventSystem& system, std::size_t event);

/// Symmetric LLL report with p and d measured on the system itself.
LllReport analyze_symmetric(const BadEventSystem& system);

/// Exact Pr[no event occurs] by enumerating the full assignment space.
/// Refuses spaces above 2^20 assignments.
double exact_avoidance_probability(const BadEventSystem& system);

/// Spot-checks that each predicate ignores variables outside its support by
/// re-sampling the non-support variables. Returns the first offending event.
std::optional<std::size_t> find_nonlocal_event(const BadEventSystem& system, std::uint64_t seed,
                                               std::size_t samples_per_event = 16);

std::uint64_t default_resample_budget(const BadEventSystem& system);

struct MoserTardosResult {
  bool solved = false;
  std::vector<std::uint32_t> assignment;
  std::uint64_t resamples = 0;
  std::uint64_t budget = 0;
  /// Events still violated when the budget ran out (empty when solved).
  std::vector<std::size_t> violated;
};

/// Moser-Tardos resampling. Samples every variable, then repeatedly
/// resamples the support of the lowest-index violated event.
MoserTardosResult moser_tardos(const BadEventSystem& system, std::uint64_t seed,
                               std::optional<std::uint64_t> max_resamples = std::nullopt);

}  // namespace derand
