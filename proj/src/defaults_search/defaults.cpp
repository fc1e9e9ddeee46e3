#include "hpscape/defaults.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "hpscape/errors.hpp"
#include "hpscape/kernels.hpp"

namespace hpscape {

namespace {

std::vector<std::span<const double>> rows_of(const PercentileTable& table) {
  std::vector<std::span<const double>> rows;
  for (std::size_t b = 0; b < table.benchmark_count(); ++b) rows.push_back(table.row(b));
  return rows;
}

// E of a prefix whose per-benchmark best is `current`; same summation order
// as kernels::score_with so that "no improvement" compares exactly equal.
double mean_of(std::span<const double> current) {
  double sum = 0.0;
  for (double v : current) sum += v;
  return sum / static_cast<double>(current.size());
}

}  // namespace

double expected_best(const PercentileTable& percentiles, std::span<const ConfigIndex> prefix) {
  if (prefix.empty() || percentiles.benchmark_count() == 0) return 0.0;
  std::vector<double> best(percentiles.benchmark_count(), 0.0);
  for (std::size_t b = 0; b < best.size(); ++b) {
    const auto row = percentiles.row(b);
    for (auto c : prefix) {
      if (c >= row.size() || std::isnan(row[c])) {
        throw UnscoredConfig("config " + std::to_string(c) + " has no percentile on benchmark '" +
                             percentiles.benchmarks()[b] + "'");
      }
      best[b] = std::max(best[b], row[c]);
    }
  }
  return mean_of(best);
}

DefaultsSequence greedy_defaults(const PercentileTable& percentiles, std::size_t max_m, Execution exec) {
  if (max_m == 0) throw DomainError("max_m must be at least 1");
  if (percentiles.benchmark_count() == 0) throw TooFewBenchmarks("no benchmarks to search over");
  const auto rows = rows_of(percentiles);
  const auto n = percentiles.config_count();

  std::vector<std::uint8_t> eligible(n, 1);
  bool any = false;
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& row : rows) {
      if (std::isnan(row[c])) eligible[c] = 0;
    }
    any = any || eligible[c];
  }
  if (!any) throw UnscoredConfig("no config is scored on every benchmark");

  DefaultsSequence seq;
  seq.benchmarks = percentiles.benchmarks();
  std::vector<double> current(rows.size(), 0.0);
  double e_prev = 0.0;
  while (seq.size() < max_m) {
    const auto pick = exec == Execution::kParallel ? kernels::best_candidate_parallel(rows, current, eligible)
                                                   : kernels::best_candidate_serial(rows, current, eligible);
    if (!pick.found || !(pick.score > e_prev)) break;
    for (std::size_t b = 0; b < rows.size(); ++b) current[b] = std::max(current[b], rows[b][pick.index]);
    e_prev = mean_of(current);
    seq.configs.push_back(pick.index);
    seq.trajectory.push_back(e_prev);
    seq.best.push_back(current);
  }
  return seq;
}

double performance_curve(const DefaultsSequence& seq, std::size_t k) {
  if (k < 1 || k > seq.size()) {
    throw OutOfRange("k = " + std::to_string(k) + " outside 1.." + std::to_string(seq.size()));
  }
  return seq.trajectory[k - 1];
}

LooReport loo_evaluate(const PercentileTable& percentiles, std::size_t max_m, Execution exec) {
  const auto l = percentiles.benchmark_count();
  if (l < 2) throw TooFewBenchmarks("leave-one-out needs at least 2 benchmarks");
  LooReport report;
  double sum = 0.0;
  for (std::size_t held = 0; held < l; ++held) {
    std::vector<std::size_t> keep;
    for (std::size_t b = 0; b < l; ++b) {
      if (b != held) keep.push_back(b);
    }
    LooFold fold;
    fold.held_out = percentiles.benchmarks()[held];
    fold.defaults = greedy_defaults(percentiles.select(keep), max_m, exec);
    const auto row = percentiles.row(held);
    for (auto c : fold.defaults.configs) {
      if (std::isnan(row[c])) {
        throw UnscoredConfig("default " + std::to_string(c) + " has no percentile on held-out benchmark '" +
                             fold.held_out + "'");
      }
      fold.holdout_best = std::max(fold.holdout_best, row[c]);
    }
    sum += fold.holdout_best;
    report.folds.push_back(std::move(fold));
  }
  report.mean_holdout_best = sum / static_cast<double>(l);
  return report;
}

}  // namespace hpscape
