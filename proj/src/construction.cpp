#include "derand/construction.hpp"

#include <algorithm>
#include <sstream>

#include "derand/error.hpp"

namespace derand {

std::size_t Subset::size() const {
  return static_cast<std::size_t>(std::count(members.begin(), members.end(), std::uint8_t{1}));
}

void Premise::fail(const std::string& why) {
  if (ok) {
    ok = false;
    diagnostic = why;
  } else {
    diagnostic += "; " + why;
  }
}

namespace {

template <class Range>
void join(std::ostringstream& out, const Range& values, char sep = ' ') {
  bool first = true;
  for (const auto& v : values) {
    if (!first) out << sep;
    out << +v;
    first = false;
  }
}

}  // namespace

std::string to_text(const Candidate& candidate) {
  std::ostringstream out;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, BitAssignment>) {
          out << "bits ";
          for (auto b : c.bits) out << int(b);
        } else if constexpr (std::is_same_v<T, Coloring>) {
          out << "coloring ";
          join(out, c.colors);
        } else if constexpr (std::is_same_v<T, Partition>) {
          out << "partition ";
          join(out, c.parts);
        } else if constexpr (std::is_same_v<T, SignVector>) {
          out << "signs ";
          for (auto s : c.signs) out << (s > 0 ? '+' : '-');
        } else if constexpr (std::is_same_v<T, Permutation>) {
          out << "permutation ";
          join(out, c.perm);
        } else if constexpr (std::is_same_v<T, Subset>) {
          out << "subset ";
          std::vector<std::size_t> idx;
          for (std::size_t i = 0; i < c.members.size(); ++i)
            if (c.members[i]) idx.push_back(i);
          join(out, idx);
        } else if constexpr (std::is_same_v<T, HashFamily>) {
          out << "hashes n=" << c.n_bits << " salt=" << c.salt;
          for (const auto& t : c.tables) {
            out << " | ";
            join(out, t);
          }
        } else if constexpr (std::is_same_v<T, NumberTuple>) {
          out << "numbers ";
          join(out, c.values);
        } else if constexpr (std::is_same_v<T, CycleList>) {
          out << "cycles";
          for (const auto& cyc : c.cycles) {
            out << " | ";
            join(out, cyc);
          }
        }
      },
      candidate);
  return out.str();
}

std::vector<std::uint8_t> to_bytes(const Candidate& candidate) {
  std::vector<std::uint8_t> out;
  auto put_bits = [&](const auto& bits) {
    std::uint8_t acc = 0;
    std::size_t n = 0;
    for (auto b : bits) {
      acc = static_cast<std::uint8_t>((acc << 1) | (b ? 1 : 0));
      if (++n % 8 == 0) {
        out.push_back(acc);
        acc = 0;
      }
    }
    if (n % 8) out.push_back(static_cast<std::uint8_t>(acc << (8 - n % 8)));
  };
  auto put_words = [&](const auto& values) {
    for (auto v : values) {
      auto x = static_cast<std::uint64_t>(v);
      do {
        out.push_back(static_cast<std::uint8_t>((x & 0x7F) | (x > 0x7F ? 0x80 : 0)));
        x >>= 7;
      } while (x);
    }
  };
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, BitAssignment>) {
          put_bits(c.bits);
        } else if constexpr (std::is_same_v<T, SignVector>) {
          std::vector<std::uint8_t> bits;
          for (auto s : c.signs) bits.push_back(s > 0);
          put_bits(bits);
        } else if constexpr (std::is_same_v<T, Subset>) {
          put_bits(c.members);
        } else if constexpr (std::is_same_v<T, Coloring>) {
          put_words(c.colors);
        } else if constexpr (std::is_same_v<T, Partition>) {
          put_words(c.parts);
        } else if constexpr (std::is_same_v<T, Permutation>) {
          put_words(c.perm);
        } else if constexpr (std::is_same_v<T, NumberTuple>) {
          put_words(c.values);
        } else if constexpr (std::is_same_v<T, HashFamily>) {
          for (const auto& t : c.tables) put_words(t);
        } else if constexpr (std::is_same_v<T, CycleList>) {
          for (const auto& cyc : c.cycles) {
            put_words(std::vector<std::size_t>{cyc.size()});
            put_words(cyc);
          }
        }
      },
      candidate);
  return out;
}

double exact_good_fraction(const Construction& c) {
  if (!c.enumerate) throw Refusal(c.name + ": candidate space has no exact enumerator");
  if (c.space_size > kMaxEnumeration)
    throw Refusal(c.name + ": candidate space of size " + std::to_string(c.space_size) +
                  " exceeds 2^24");
  double good = 0.0;
  c.enumerate([&](const Candidate& cand, double p) {
    if (p > 0.0 && c.is_good(cand)) good += p;
  });
  return std::min(good, 1.0);
}

Evaluation evaluate(const Construction& c, std::uint64_t trials, std::uint64_t seed,
                    const TrialOptions& options) {
  Evaluation out;
  out.estimate = run_trials([&](RngStream& rng) { return c.is_good(c.sample(rng)); }, trials, seed,
                            options);
  out.verdict = verdict_against_bound(out.estimate, c.claimed_prob);
  out.binding = c.premise.ok;
  return out;
}

MeanEstimate estimate_statistic(const Construction& c, std::uint64_t trials, std::uint64_t seed,
                                const TrialOptions& options) {
  if (!c.statistic) throw InvalidArgument(c.name + " has no statistic");
  return run_samples([&](RngStream& rng) { return c.statistic(c.sample(rng)); }, trials, seed,
                     options);
}

}  // namespace derand
