// Sign-vector balancing and function minimisation.

#include <algorithm>
#include <cmath>
#include <limits>

#include "derand/constructions.hpp"
#include "derand/error.hpp"
#include "enumerate.hpp"

namespace derand {

using detail::fmt_double;

namespace {

void uniform_signs(Construction& c, std::size_t n) {
  c.sample = [n](RngStream& rng) -> Candidate {
    SignVector s;
    s.signs.resize(n);
    for (auto& x : s.signs) x = rng.coin() ? 1 : -1;
    return s;
  };
  detail::set_product_enumerator(c, detail::uniform_digits(n, 2),
                                 [](std::span<const std::uint32_t> d) -> Candidate {
                                   SignVector s;
                                   for (auto b : d) s.signs.push_back(b ? 1 : -1);
                                   return s;
                                 });
}

double signed_sum_norm2(const UnitVectors& v, const std::vector<std::int8_t>& signs) {
  std::vector<double> sum(v.dim(), 0.0);
  for (std::size_t i = 0; i < v.count(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) sum[j] += signs[i] * v.vectors()[i][j];
  double n2 = 0.0;
  for (double x : sum) n2 += x * x;
  return n2;
}

}  // namespace

Construction build_balance_matrix(const BinaryMatrix& matrix) {
  Construction c;
  c.name = "balance-matrix";
  const std::size_t n = matrix.size();
  const double nd = static_cast<double>(n);
  const double threshold = n >= 2 ? 4.0 * std::sqrt(nd * std::log(nd)) : 0.0;
  c.params = {{"n", n}, {"threshold", threshold}};
  c.claimed_prob = n == 0 ? 0.0 : std::max(1.0 - 2.0 * std::pow(nd, -7.0), 0.0);
  c.claimed_expr = "max(1 - 2n^-7, 0)";
  if (n < 2) c.premise.fail("n must be at least 2");

  uniform_signs(c, n);
  c.is_good = [matrix, threshold](const Candidate& cand) {
    const auto& s = std::get<SignVector>(cand).signs;
    const std::size_t n = matrix.size();
    for (std::size_t i = 0; i < n; ++i) {
      long long row = 0;
      for (std::size_t j = 0; j < n; ++j) row += matrix.at(i, j) * s[j];
      if (std::abs(static_cast<double>(row)) > threshold + 1e-12) return false;
    }
    return true;
  };
  c.validate_solution = c.is_good;
  return c;
}

Construction build_balance_unit_vectors(const UnitVectors& vectors) {
  Construction c;
  c.name = "balance-vectors";
  const std::size_t n = vectors.count();
  c.params = {{"n", n}, {"dim", vectors.dim()}};
  c.claimed_prob = 0.5;
  c.claimed_expr = "1/2";
  if (n == 0) c.premise.fail("need at least one vector");

  uniform_signs(c, n);
  const double limit = 2.0 * static_cast<double>(n);
  c.is_good = [vectors, limit](const Candidate& cand) {
    // Squared norm compared against 2n; the slack absorbs rounding at the boundary.
    return signed_sum_norm2(vectors, std::get<SignVector>(cand).signs) <= limit * (1.0 + 1e-9);
  };
  c.validate_solution = c.is_good;
  c.statistic = [vectors](const Candidate& cand) {
    return signed_sum_norm2(vectors, std::get<SignVector>(cand).signs);
  };
  c.statistic_name = "squared norm";
  c.statistic_expected = static_cast<double>(n);
  return c;
}

void DiscreteDistribution::validate() const {
  if (values.empty() || values.size() != probs.size())
    throw InvalidArgument("distribution needs matching, non-empty values and probabilities");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw InvalidArgument("distribution probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("distribution probabilities must sum to 1");
}

DiscreteDistribution DiscreteDistribution::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw InvalidArgument("uniform distribution needs lo <= hi");
  DiscreteDistribution d;
  const double p = 1.0 / static_cast<double>(hi - lo + 1);
  for (std::uint64_t v = lo; v <= hi; ++v) {
    d.values.push_back(v);
    d.probs.push_back(p);
  }
  return d;
}

Construction build_function_min(const DiscreteDistribution& dist, std::vector<CostFn> fs) {
  dist.validate();
  Construction c;
  c.name = "funcmin";
  const std::size_t n = fs.size();

  double total_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double mean = 0.0;
    for (std::size_t j = 0; j < dist.values.size(); ++j) {
      if (dist.probs[j] == 0.0) continue;
      const double f = fs[i](dist.values[j]);
      if (f < 0.0) throw InvalidArgument("funcmin: costs must be nonnegative");
      mean += dist.probs[j] * f;
    }
    if (!std::isfinite(mean)) c.premise.fail("E[f_" + std::to_string(i + 1) + "] is infinite");
    total_mean += mean;
  }
  const double tau = std::isfinite(total_mean) ? std::ceil(2.0 * total_mean - 1e-9)
                                               : std::numeric_limits<double>::infinity();
  c.params = {{"n", n}, {"support", dist.values.size()}, {"sum_mean", total_mean}};
  c.params["tau"] = std::isfinite(tau) ? nlohmann::json(tau) : nlohmann::json("inf");
  c.claimed_prob = 0.5;
  c.claimed_expr = "1/2";

  c.sample = [dist, n](RngStream& rng) -> Candidate {
    NumberTuple t;
    t.values.resize(n);
    for (auto& v : t.values) v = dist.values[rng.discrete(dist.probs)];
    return t;
  };
  c.is_good = [fs, tau](const Candidate& cand) {
    const auto& a = std::get<NumberTuple>(cand).values;
    double sum = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) sum += fs[i](a[i]);
    return sum <= tau;
  };
  c.validate_solution = c.is_good;
  c.statistic = [fs](const Candidate& cand) {
    const auto& a = std::get<NumberTuple>(cand).values;
    double sum = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) sum += fs[i](a[i]);
    return sum;
  };
  c.statistic_name = "total cost";
  c.statistic_expected = total_mean;
  detail::set_product_enumerator(
      c, std::vector<std::vector<double>>(n, dist.probs),
      [values = dist.values](std::span<const std::uint32_t> d) -> Candidate {
        NumberTuple t;
        for (auto i : d) t.values.push_back(values[i]);
        return t;
      });
  return c;
}

}  // namespace derand
