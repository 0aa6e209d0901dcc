#pragma once

// Internal helpers shared by the construction builders.

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "derand/construction.hpp"

namespace derand::detail {

/// Enumerates a product space where coordinate i ranges over
/// [0, probs[i].size()) with the given per-value probabilities, handing each
/// digit vector and its probability to `visit`.
inline void enumerate_product(const std::vector<std::vector<double>>& probs,
                              const std::function<void(std::span<const std::uint32_t>, double)>& visit) {
  std::vector<std::uint32_t> digits(probs.size(), 0);
  for (const auto& p : probs)
    if (p.empty()) return;
  while (true) {
    double prob = 1.0;
    for (std::size_t i = 0; i < digits.size(); ++i) prob *= probs[i][digits[i]];
    visit(digits, prob);
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == probs[i].size()) digits[i++] = 0;
    if (i == digits.size()) return;
  }
}

inline std::vector<std::vector<double>> uniform_digits(std::size_t coordinates, std::size_t values) {
  return std::vector<std::vector<double>>(coordinates, std::vector<double>(values, 1.0 / static_cast<double>(values)));
}

inline std::vector<std::vector<double>> bernoulli_digits(std::size_t coordinates, double p) {
  return std::vector<std::vector<double>>(coordinates, std::vector<double>{1.0 - p, p});
}

inline double product_space_size(const std::vector<std::vector<double>>& probs) {
  double size = 1.0;
  for (const auto& p : probs) size *= static_cast<double>(p.size());
  return size;
}

/// Installs a product-space enumerator that maps digit vectors to candidates.
template <class Make>
void set_product_enumerator(Construction& c, std::vector<std::vector<double>> probs, Make make) {
  c.space_size = product_space_size(probs);
  c.enumerate = [probs = std::move(probs), make](const CandidateVisitor& visitor) {
    enumerate_product(probs, [&](std::span<const std::uint32_t> digits, double p) {
      visitor(make(digits), p);
    });
  };
}

inline std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace derand::detail
