#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "derand/construction.hpp"
#include "derand/instances.hpp"
#include "derand/lll.hpp"

namespace derand {

/// Outcome of a constructive search. `solution` is the post-processed
/// candidate and is only meaningful when `found` is true.
struct SolveResult {
  bool found = false;
  Candidate candidate;
  Candidate solution;
  /// The construction's validity checker on `solution`.
  bool valid = false;
  /// Resamples (Moser-Tardos, swaps) or sampling attempts (rejection).
  std::uint64_t work = 0;
  std::uint64_t budget = 0;
  std::string method;
};

/// One event per clause ("clause falsified") over Boolean variables.
BadEventSystem ksat_event_system(const CnfFormula& formula);
/// One event per hyperedge ("edge monochromatic") over 2-colourings.
BadEventSystem hypergraph_event_system(const Hypergraph& hypergraph);
/// One event per vertex ("some colour repeats more than beta times in the
/// neighbourhood") over Q-colourings.
BadEventSystem frugal_event_system(const Graph& graph, std::size_t beta, std::size_t colors);

/// Moser-Tardos on `system`, converted into the construction's candidate
/// shape and checked with its predicate.
SolveResult solve_with_resampling(const Construction& c, const BadEventSystem& system,
                                  std::uint64_t seed, std::optional<std::uint64_t> budget = std::nullopt);

/// Latin transversal by swap resampling: while two rows i < j clash, swap
/// pi(i) with pi(r) for a uniform row r. Default budget 64 * (n^2 + 1).
SolveResult solve_latin(const Construction& c, const IntMatrix& matrix, std::uint64_t seed,
                        std::optional<std::uint64_t> budget = std::nullopt);

inline constexpr std::uint64_t kDefaultRejectionAttempts = 100000;

/// Draws candidates on streams (seed, 0), (seed, 1), ... until one is good.
SolveResult solve_by_rejection(const Construction& c, std::uint64_t seed,
                               std::uint64_t max_attempts = kDefaultRejectionAttempts);

}  // namespace derand
