#pragma once

#include <span>
#include <string>
#include <vector>

#include "hpscape/parallel.hpp"
#include "hpscape/stats.hpp"

namespace hpscape {

/// Mean over benchmarks of the best percentile reached by any config in
/// `prefix`. The empty prefix scores 0. Throws UnscoredConfig.
[[nodiscard]] double expected_best(const PercentileTable& percentiles, std::span<const ConfigIndex> prefix);

struct DefaultsSequence {
  std::vector<std::string> benchmarks;
  std::vector<ConfigIndex> configs;
  /// trajectory[k] = expected best after configs[0..k].
  std::vector<double> trajectory;
  /// best[k][b] = running max of benchmark b's percentile over configs[0..k].
  std::vector<std::vector<double>> best;

  [[nodiscard]] std::size_t size() const { return configs.size(); }
};

inline constexpr std::size_t kDefaultMaxDefaults = 25;

/// Greedy forward selection with a full scan of every candidate per step.
/// Candidates are configs scored on every benchmark; ties go to the lowest
/// ConfigIndex. Stops once the best candidate no longer raises the expected
/// best performance, or after `max_m` picks.
[[nodiscard]] DefaultsSequence greedy_defaults(const PercentileTable& percentiles,
                                               std::size_t max_m = kDefaultMaxDefaults,
                                               Execution exec = Execution::kParallel);

/// Expected best after the first k defaults (1 <= k <= m). Throws OutOfRange.
[[nodiscard]] double performance_curve(const DefaultsSequence& seq, std::size_t k);

struct LooFold {
  std::string held_out;
  DefaultsSequence defaults;
  /// Best held-out percentile over the defaults found on the other benchmarks.
  double holdout_best = 0.0;
};

struct LooReport {
  std::vector<LooFold> folds;
  double mean_holdout_best = 0.0;
};

/// Leave-one-benchmark-out evaluation of greedy_defaults. Throws TooFewBenchmarks.
[[nodiscard]] LooReport loo_evaluate(const PercentileTable& percentiles,
                                     std::size_t max_m = kDefaultMaxDefaults,
                                     Execution exec = Execution::kParallel);

}  // namespace hpscape
