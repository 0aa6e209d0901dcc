#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace derand {

/// SplitMix64 step. Advances `state` and returns the next output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// The SplitMix64 output finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Counter-split pseudo-random stream.
///
/// Every Monte Carlo trial in the library draws from its own stream
/// identified by `(master_seed, stream_index)`. The generator is
/// xoshiro256** whose four state words are the first four SplitMix64
/// outputs started from `master_seed ^ mix64(stream_index)`. All derived
/// draws (bounded integers, reals, shuffles) are implemented here in
/// integer arithmetic, so a stream produces the same values on every
/// platform and standard library.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next(); }
  std::uint64_t next() noexcept;

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) noexcept;
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;
  bool bernoulli(double p) noexcept;
  bool coin() noexcept { return (next() >> 63) != 0; }
  /// Index drawn from a discrete distribution given by its weights.
  std::size_t discrete(std::span<const double> weights) noexcept;

  template <class T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  /// Uniformly random permutation of {0, ..., n-1}.
  std::vector<std::uint32_t> permutation(std::size_t n);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

 private:
  std::uint64_t state_[4];
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
};

}  // namespace derand
