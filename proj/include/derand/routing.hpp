#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "derand/construction.hpp"

namespace derand {

using NodeMap = std::vector<std::uint32_t>;

/// Nodes visited when correcting the differing bits of `src` from the most
/// significant (left-most) to the least significant. Includes both ends.
std::vector<std::uint32_t> bit_fixing_path(std::uint32_t src, std::uint32_t dst, unsigned dim);

/// "identity", "reversal" (bit reversal) or "transpose". For odd dim the
/// transpose rotates the address left by ceil(dim/2) bits.
NodeMap named_permutation(std::string_view name, unsigned dim);

/// "i d(i)" lines, one per node; '#' starts a comment.
NodeMap parse_destination_map(std::string_view text, unsigned dim);

bool is_permutation(const NodeMap& map);

/// Order in which packets arriving at a node in the same step join their
/// next queue.
struct TieRule {
  enum class Kind { LowestId, Seeded };
  Kind kind = Kind::LowestId;
  std::uint64_t seed = 0;
};

struct Hop {
  std::uint32_t step = 0;  // step during which the edge was crossed (1-based)
  std::uint32_t packet = 0;
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::uint8_t phase = 1;

  bool operator==(const Hop&) const = default;
};

struct RoutingRun {
  std::vector<std::uint32_t> delivery_time;
  std::uint32_t makespan = 0;
  bool truncated = false;
  /// Destinations form a permutation (the setting of the 14n guarantee).
  bool permutation = true;
  std::uint32_t steps = 0;
  /// Packets still queued and already delivered after each step, starting
  /// with the state before step 1.
  std::vector<std::uint32_t> in_flight;
  std::vector<std::uint32_t> delivered;
  /// Every edge crossing, when tracing is enabled.
  std::vector<Hop> hops;

  bool operator==(const RoutingRun&) const = default;
};

struct SimulationOptions {
  TieRule tie_rule;
  /// Defaults to 100 * dim.
  std::optional<std::uint32_t> max_steps;
  bool trace = false;
};

/// Synchronous two-phase routing of packet i from node i to sigma(i) and on
/// to dest(i) on the dim-cube. Each directed edge has a FIFO queue and
/// forwards one packet per step; a packet enters phase 2 as soon as it
/// reaches sigma(i).
RoutingRun simulate_two_phase(unsigned dim, const NodeMap& dest, const NodeMap& sigma,
                              const SimulationOptions& options = {});

/// sigma drawn uniformly per packet; good iff every packet is delivered
/// within 14 * dim steps.
Construction build_routing_construction(unsigned dim, const NodeMap& dest, TieRule tie_rule = {});

}  // namespace derand
