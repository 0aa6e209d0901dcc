#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "derand/rng.hpp"

namespace derand {

inline constexpr double kDefaultConfidence = 0.99;
inline constexpr std::uint64_t kDefaultTrials = 100000;

/// Monte Carlo estimate of a success probability.
struct Estimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  /// One-sided Wilson bounds at `confidence`.
  double one_sided_lower = 0.0;
  double one_sided_upper = 1.0;
  double confidence = kDefaultConfidence;
  std::uint64_t master_seed = 0;

  bool operator==(const Estimate&) const = default;
};

enum class VerdictStatus { Consistent, Refuted, Inconclusive };

std::string to_string(VerdictStatus status);

struct Verdict {
  double claimed_bound = 0.0;
  VerdictStatus status = VerdictStatus::Inconclusive;
  /// p_hat - claimed_bound.
  double margin = 0.0;
};

/// Execution knobs shared by every Monte Carlo driver.
struct TrialOptions {
  double confidence = kDefaultConfidence;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

using TrialFn = std::function<bool(RngStream&)>;
using SampleFn = std::function<double(RngStream&)>;

/// Two-sided Wilson score interval at the given confidence level.
/// Throws InvalidArgument when trials == 0 or the inputs are out of range.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double confidence);

/// Standard normal quantile.
double normal_quantile(double p);

/// Builds an Estimate from raw counts with one-sided Wilson bounds.
Estimate make_estimate(std::uint64_t successes, std::uint64_t trials, double confidence,
                       std::uint64_t master_seed);

/// Runs trial i on RngStream(master_seed, i) for i in [0, trials).
///
/// Outcomes are aggregated with integer counters, so the result does not
/// depend on the thread count or scheduling. An exception thrown by any
/// trial is rethrown on the calling thread.
Estimate run_trials(const TrialFn& trial, std::uint64_t trials, std::uint64_t master_seed,
                    const TrialOptions& options = {});

Verdict verdict_against_bound(const Estimate& est, double claimed);

/// Sample mean with a two-sided normal-approximation interval.
struct MeanEstimate {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double confidence = kDefaultConfidence;
  std::uint64_t master_seed = 0;
};

/// Like run_trials but for real-valued outcomes. Values are summed in trial
/// order after all workers finish, so the mean is bit-identical for any
/// thread count.
MeanEstimate run_samples(const SampleFn& sample, std::uint64_t trials, std::uint64_t master_seed,
                         const TrialOptions& options = {});

}  // namespace derand
