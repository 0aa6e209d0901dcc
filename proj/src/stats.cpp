#include "derand/stats.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "derand/error.hpp"

namespace derand {

namespace {

unsigned resolve_threads(unsigned requested, std::uint64_t work) {
  unsigned threads = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (work < threads) threads = static_cast<unsigned>(std::max<std::uint64_t>(work, 1));
  return threads;
}

// Calls body(begin, end) on contiguous blocks of [0, count) from `threads`
// workers and rethrows the first exception.
template <class Body>
void parallel_blocks(std::uint64_t count, unsigned threads, Body&& body) {
  if (threads <= 1) {
    body(std::uint64_t{0}, count);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  const std::uint64_t block = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = std::min(count, block * t);
    const std::uint64_t end = std::min(count, begin + block);
    workers.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Consistent:
      return "CONSISTENT";
    case VerdictStatus::Refuted:
      return "REFUTED";
    case VerdictStatus::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("normal_quantile: p must be in (0,1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

namespace {

std::pair<double, double> wilson_with_z(std::uint64_t successes, std::uint64_t trials, double z) {
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  double lower = successes == 0 ? 0.0 : std::clamp(center - half, 0.0, 1.0);
  double upper = successes == trials ? 1.0 : std::clamp(center + half, 0.0, 1.0);
  return {lower, upper};
}

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double confidence) {
  if (trials == 0) throw InvalidArgument("wilson_interval: trials must be positive");
  if (successes > trials) throw InvalidArgument("wilson_interval: successes exceed trials");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw InvalidArgument("wilson_interval: confidence must be in (0,1)");
  return wilson_with_z(successes, trials, normal_quantile(0.5 + confidence / 2.0));
}

Estimate make_estimate(std::uint64_t successes, std::uint64_t trials, double confidence,
                       std::uint64_t master_seed) {
  if (trials == 0) throw InvalidArgument("estimate requires at least one trial");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw InvalidArgument("confidence must be in (0,1)");
  Estimate est;
  est.trials = trials;
  est.successes = successes;
  est.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
  auto [lo, hi] = wilson_with_z(successes, trials, normal_quantile(confidence));
  est.one_sided_lower = std::min(lo, est.p_hat);
  est.one_sided_upper = std::max(hi, est.p_hat);
  est.confidence = confidence;
  est.master_seed = master_seed;
  return est;
}

Estimate run_trials(const TrialFn& trial, std::uint64_t trials, std::uint64_t master_seed,
                    const TrialOptions& options) {
  if (trials == 0) throw InvalidArgument("run_trials: trials must be >= 1");
  const unsigned threads = resolve_threads(options.threads, trials);
  std::vector<std::uint64_t> counts(threads, 0);
  std::mutex slot_mutex;
  unsigned next_slot = 0;
  parallel_blocks(trials, threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t local = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      RngStream stream(master_seed, i);
      if (trial(stream)) ++local;
    }
    std::lock_guard lock(slot_mutex);
    counts[next_slot++] = local;
  });
  std::uint64_t successes = 0;
  for (auto c : counts) successes += c;
  return make_estimate(successes, trials, options.confidence, master_seed);
}

Verdict verdict_against_bound(const Estimate& est, double claimed) {
  constexpr double kSlack = 1e-12;
  Verdict v;
  v.claimed_bound = claimed;
  v.margin = est.p_hat - claimed;
  if (est.one_sided_upper < claimed - kSlack)
    v.status = VerdictStatus::Refuted;
  else if (est.one_sided_lower >= claimed - kSlack)
    v.status = VerdictStatus::Consistent;
  else
    v.status = VerdictStatus::Inconclusive;
  return v;
}

MeanEstimate run_samples(const SampleFn& sample, std::uint64_t trials, std::uint64_t master_seed,
                         const TrialOptions& options) {
  if (trials == 0) throw InvalidArgument("run_samples: trials must be >= 1");
  std::vector<double> values(trials);
  parallel_blocks(trials, resolve_threads(options.threads, trials),
                  [&](std::uint64_t begin, std::uint64_t end) {
                    for (std::uint64_t i = begin; i < end; ++i) {
                      RngStream stream(master_seed, i);
                      values[i] = sample(stream);
                    }
                  });
  double sum = 0.0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(trials);
  MeanEstimate est;
  est.trials = trials;
  est.mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - est.mean) * (v - est.mean);
  est.stddev = trials > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  const double half = normal_quantile(0.5 + options.confidence / 2.0) * est.stddev / std::sqrt(n);
  est.ci_lower = est.mean - half;
  est.ci_upper = est.mean + half;
  est.confidence = options.confidence;
  est.master_seed = master_seed;
  return est;
}

}  // namespace derand
