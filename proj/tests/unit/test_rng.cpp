#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "derand/rng.hpp"

using derand::RngStream;

// Reference values from an independent xoshiro256** / SplitMix64 implementation.
TEST(Rng, GoldenStreamZero) {
  RngStream rng(0, 0);
  const std::array<std::uint64_t, 8> expected = {
      0x99ec5f36cb75f2b4ULL, 0xbf6e1f784956452aULL, 0x1a5f849d4933e6e0ULL, 0x6aa594f1262d2d2cULL,
      0xbba5ad4a1f842e59ULL, 0xffef8375d9ebcacaULL, 0x6c160deed2f54c98ULL, 0x8920ad648fc30a3fULL};
  for (auto want : expected) EXPECT_EQ(rng.next(), want);
}

TEST(Rng, GoldenOtherStream) {
  RngStream rng(42, 7);
  EXPECT_EQ(rng.next(), 0x11a904479c05b3daULL);
  EXPECT_EQ(rng.next(), 0xcffd69429302c462ULL);
  EXPECT_EQ(rng.next(), 0x79e6a4245def3af9ULL);
  EXPECT_EQ(rng.next(), 0x501c914b15828b2bULL);
}

TEST(Rng, SplitMixReference) {
  std::uint64_t s = 0;
  EXPECT_EQ(derand::splitmix64(s), 0xe220a8397b1dcdafULL);
}

TEST(Rng, SameStreamSameValues) {
  RngStream a(123, 9), b(123, 9);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next(), b.next());
}

TEST(Rng, DistinctStreamsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 1000; ++i) firsts.insert(RngStream(5, i).next());
  EXPECT_EQ(firsts.size(), 1000u);
  EXPECT_NE(RngStream(1, 0).next(), RngStream(2, 0).next());
}

TEST(Rng, BelowStaysInRange) {
  RngStream rng(1, 1);
  for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 7ULL, 1000ULL, (1ULL << 63) + 5}) {
    for (int i = 0; i < 200; ++i) ASSERT_LT(rng.below(bound), bound);
  }
  for (int i = 0; i < 200; ++i) {
    const auto x = rng.between(-3, 3);
    ASSERT_GE(x, -3);
    ASSERT_LE(x, 3);
  }
}

TEST(Rng, UniformInUnitInterval) {
  RngStream rng(3, 0);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

// Chi-squared goodness of fit for below(6); 5 degrees of freedom, 0.999
// critical value 20.515.
TEST(Rng, BelowChiSquared) {
  RngStream rng(77, 0);
  std::array<double, 6> counts{};
  const int n = 60000;
  for (int i = 0; i < n; ++i) counts[rng.below(6)] += 1;
  double chi = 0;
  for (double c : counts) chi += (c - n / 6.0) * (c - n / 6.0) / (n / 6.0);
  EXPECT_LT(chi, 20.515);
}

// All 24 permutations of 4 items should be equally likely; 23 dof, 0.999
// critical value 49.728.
TEST(Rng, PermutationChiSquared) {
  RngStream rng(8, 2);
  std::map<std::vector<std::uint32_t>, int> counts;
  const int n = 48000;
  for (int i = 0; i < n; ++i) counts[rng.permutation(4)]++;
  ASSERT_EQ(counts.size(), 24u);
  double chi = 0;
  for (const auto& [p, c] : counts) chi += (c - n / 24.0) * (c - n / 24.0) / (n / 24.0);
  EXPECT_LT(chi, 49.728);
}

TEST(Rng, DiscreteFollowsWeights) {
  RngStream rng(4, 4);
  const std::vector<double> w = {0.1, 0.0, 0.6, 0.3};
  std::array<int, 4> counts{};
  for (int i = 0; i < 100000; ++i) counts[rng.discrete(w)]++;
  EXPECT_EQ(counts[1], 0);
  EXPECT_NEAR(counts[0] / 1e5, 0.1, 0.005);
  EXPECT_NEAR(counts[2] / 1e5, 0.6, 0.007);
}

TEST(Rng, BernoulliEdges) {
  RngStream rng(0, 3);
  for (int i = 0; i < 100; ++i) {
    EXPECT_FALSE(rng.bernoulli(0.0));
    EXPECT_TRUE(rng.bernoulli(1.0));
  }
}

TEST(Rng, PermutationIsPermutation) {
  RngStream rng(9, 9);
  for (std::size_t n : {0u, 1u, 5u, 100u}) {
    auto p = rng.permutation(n);
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(p[i], i);
  }
}
