#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpscape/results_table.hpp"

namespace hpscape {

struct ValueMean {
  std::string value;
  double mean = 0.0;
  std::size_t count = 0;
};

/// Mean accuracy over all scored configs sharing each value of `hyperparam`,
/// in domain order. Values without any scored config are omitted.
[[nodiscard]] std::vector<ValueMean> value_mean_accuracy(const ResultsTable& table,
                                                         std::string_view dataset,
                                                         std::string_view hyperparam);

struct FiveNumberSummary {
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;

  friend bool operator==(const FiveNumberSummary&, const FiveNumberSummary&) = default;
};

/// Quantile of sorted data by linear interpolation at zero-based position (n-1)*q.
[[nodiscard]] double quantile_sorted(std::span<const double> sorted, double q);

/// Throws EmptyInput.
[[nodiscard]] FiveNumberSummary five_number(std::span<const double> values);

/// Percentiles of one dataset, indexed by ConfigIndex; NaN for unscored configs.
/// percentile(c) = #{c' : acc(c') < acc(c)} / (N - 1) over the N scored configs.
/// Throws TooFewConfigs when N < 2.
[[nodiscard]] std::vector<double> percentile_transform(const ResultsTable& table, std::string_view dataset);

/// Same rank rule applied to a plain vector (NaN entries ignored and kept NaN).
[[nodiscard]] std::vector<double> percentiles_of(std::span<const double> values);

/// Rank-percentile transform of every dataset in a table.
class PercentileTable {
 public:
  PercentileTable() = default;
  PercentileTable(HyperparamSpace space, std::vector<std::string> benchmarks,
                  std::vector<std::vector<double>> rows);
  static PercentileTable from_results(const ResultsTable& table);

  [[nodiscard]] const HyperparamSpace& space() const { return space_; }
  [[nodiscard]] const std::vector<std::string>& benchmarks() const { return benchmarks_; }
  [[nodiscard]] std::size_t benchmark_count() const { return rows_.size(); }
  [[nodiscard]] std::size_t config_count() const { return static_cast<std::size_t>(space_.config_count()); }
  [[nodiscard]] std::span<const double> row(std::size_t benchmark) const { return rows_[benchmark]; }

  /// Sub-table keeping only the listed benchmarks, in the given order.
  [[nodiscard]] PercentileTable select(const std::vector<std::size_t>& benchmarks) const;

 private:
  HyperparamSpace space_;
  std::vector<std::string> benchmarks_;
  std::vector<std::vector<double>> rows_;
};

enum class CorrelationMethod { kPearson, kSpearman };

/// Symmetric matrix; nullopt marks an undefined entry (a zero-variance input).
struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<std::optional<double>> values;  // row-major, labels.size()^2

  [[nodiscard]] std::size_t size() const { return labels.size(); }
  [[nodiscard]] std::optional<double> at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
  /// Indices of inputs whose accuracy vector is constant.
  std::vector<std::size_t> zero_variance;
};

[[nodiscard]] std::optional<double> pearson(std::span<const double> x, std::span<const double> y);
/// Pearson correlation of average ranks.
[[nodiscard]] std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

/// Correlates the same configs across table versions for one dataset.
/// Every table must share the space and be complete for `dataset`.
/// Throws SpaceMismatch, UnknownDataset, MissingRows, TooFewConfigs.
[[nodiscard]] CorrelationMatrix cross_version_correlation(std::span<const ResultsTable> tables,
                                                          std::string_view dataset,
                                                          std::vector<std::string> labels = {},
                                                          CorrelationMethod method = CorrelationMethod::kPearson);

}  // namespace hpscape
