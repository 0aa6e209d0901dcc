#include <gtest/gtest.h>

#include <bit>

#include "derand/error.hpp"
#include "derand/routing.hpp"

using namespace derand;

TEST(BitFixing, LeftToRight) {
  EXPECT_EQ(bit_fixing_path(0b1011, 0b0000, 4), (std::vector<std::uint32_t>{0b1011, 0b0011, 0b0001, 0b0000}));
  EXPECT_EQ(bit_fixing_path(0b000, 0b111, 3), (std::vector<std::uint32_t>{0b000, 0b100, 0b110, 0b111}));
  EXPECT_EQ(bit_fixing_path(5, 5, 3), (std::vector<std::uint32_t>{5}));
}

TEST(Permutations, Named) {
  EXPECT_EQ(named_permutation("identity", 2), (NodeMap{0, 1, 2, 3}));
  EXPECT_EQ(named_permutation("reversal", 3), (NodeMap{0, 4, 2, 6, 1, 5, 3, 7}));
  // dim 4: swap the two halves of the address.
  const auto t = named_permutation("transpose", 4);
  EXPECT_EQ(t[0b0001], 0b0100u);
  EXPECT_EQ(t[0b1100], 0b0011u);
  for (unsigned d = 1; d <= 6; ++d)
    for (const char* name : {"identity", "reversal", "transpose"}) EXPECT_TRUE(is_permutation(named_permutation(name, d)));
  EXPECT_THROW(named_permutation("shuffle", 3), InvalidArgument);
}

TEST(Permutations, MapFile) {
  const auto m = parse_destination_map("# swap\n0 1\n1 0\n", 1);
  EXPECT_EQ(m, (NodeMap{1, 0}));
  EXPECT_THROW(parse_destination_map("0 1\n", 1), Error);
  EXPECT_THROW(parse_destination_map("0 5\n1 0\n", 1), Error);
  EXPECT_FALSE(is_permutation({0, 0}));
}

TEST(Simulation, IdentityIsInstant) {
  const auto id = named_permutation("identity", 3);
  const auto run = simulate_two_phase(3, id, id);
  EXPECT_EQ(run.makespan, 0u);
  EXPECT_FALSE(run.truncated);
}

TEST(Simulation, DisjointPathsNoQueueing) {
  // dim 2, packets 0 -> 1 and 2 -> 3 through sigma = their destinations.
  const NodeMap dest = {1, 0, 3, 2};
  const auto run = simulate_two_phase(2, dest, dest);
  EXPECT_EQ(run.makespan, 1u);
  for (auto t : run.delivery_time) EXPECT_EQ(t, 1u);
}

// Properties checked on traced runs: conservation, legal hops, phase
// direction and determinism.
TEST(Simulation, TraceInvariants) {
  for (unsigned dim : {2u, 3u, 4u}) {
    const auto n = 1u << dim;
    const auto dest = named_permutation("reversal", dim);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RngStream rng(seed, dim);
      NodeMap sigma(n);
      for (auto& s : sigma) s = static_cast<std::uint32_t>(rng.below(n));
      SimulationOptions opt;
      opt.trace = true;
      const auto run = simulate_two_phase(dim, dest, sigma, opt);
      ASSERT_FALSE(run.truncated);
      for (std::size_t t = 0; t < run.in_flight.size(); ++t) ASSERT_EQ(run.in_flight[t] + run.delivered[t], n);
      std::vector<std::uint32_t> at(n);
      for (std::uint32_t i = 0; i < n; ++i) at[i] = i;
      for (const auto& h : run.hops) {
        ASSERT_EQ(std::popcount(h.from ^ h.to), 1);
        ASSERT_EQ(at[h.packet], h.from);
        const auto target = h.phase == 1 ? sigma[h.packet] : dest[h.packet];
        // The flipped bit is the left-most bit still differing from the target.
        const auto diff = h.from ^ target;
        ASSERT_EQ(h.from ^ h.to, std::bit_floor(diff));
        at[h.packet] = h.to;
      }
      for (std::uint32_t i = 0; i < n; ++i) ASSERT_EQ(at[i], dest[i]);
      EXPECT_EQ(simulate_two_phase(dim, dest, sigma, opt), run);
    }
  }
}

TEST(Simulation, SeededTiesDeterministic) {
  const auto dest = named_permutation("transpose", 4);
  NodeMap sigma(16, 0);
  SimulationOptions opt;
  opt.tie_rule = {TieRule::Kind::Seeded, 99};
  EXPECT_EQ(simulate_two_phase(4, dest, sigma, opt), simulate_two_phase(4, dest, sigma, opt));
}

TEST(Simulation, TruncationFlagged) {
  const auto dest = named_permutation("reversal", 3);
  NodeMap sigma(8, 0);
  SimulationOptions opt;
  opt.max_steps = 2;
  EXPECT_TRUE(simulate_two_phase(3, dest, sigma, opt).truncated);
}

TEST(Simulation, NonPermutationTagged) {
  const NodeMap dest = {0, 0, 0, 0};
  const auto run = simulate_two_phase(2, dest, dest);
  EXPECT_FALSE(run.permutation);
  EXPECT_FALSE(build_routing_construction(2, dest).premise.ok);
}

TEST(RoutingConstruction, OneDimension) {
  const auto c = build_routing_construction(1, named_permutation("reversal", 1));
  EXPECT_DOUBLE_EQ(c.claimed_prob, 0.5);
  const auto ev = evaluate(c, 1000, 1);
  EXPECT_EQ(ev.estimate.p_hat, 1.0);
}

TEST(RoutingConstruction, TransposeConsistent) {
  const auto c = build_routing_construction(3, named_permutation("transpose", 3));
  EXPECT_EQ(c.params["step_limit"], 42);
  EXPECT_EQ(evaluate(c, 10000, 2).verdict.status, VerdictStatus::Consistent);
}
