#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hpscape/parallel.hpp"
#include "hpscape/results_table.hpp"

namespace hpscape {

/// Level of `hyperparam` maximising accuracy with every other coordinate of
/// `config` held fixed. Ties go to the lowest domain index.
/// Throws MissingRows when the sweep is incomplete.
[[nodiscard]] std::uint32_t tune_level(const ResultsTable& table, std::size_t dataset,
                                       const Config& config, std::size_t hyperparam);

/// Name-based form of tune_level returning the winning domain value.
[[nodiscard]] std::string tune(const ResultsTable& table, std::string_view dataset,
                               const Config& config, std::string_view hyperparam);

struct InfluenceResult {
  std::uint64_t differences = 0;
  std::uint64_t trials = 0;

  [[nodiscard]] double probability() const {
    return trials == 0 ? 0.0 : static_cast<double>(differences) / static_cast<double>(trials);
  }
  friend bool operator==(const InfluenceResult&, const InfluenceResult&) = default;
};

/// Influence of A on B: over every starting config (restricted to `fixed`
/// when given), tune B; tune A; re-tune B; count how often B's value changed.
/// Throws SameHyperparam, MissingRows, DomainError (A or B pinned).
[[nodiscard]] InfluenceResult influence(const ResultsTable& table, std::size_t dataset, std::size_t a,
                                        std::size_t b, const PartialAssignment& fixed = {},
                                        Execution exec = Execution::kParallel);

[[nodiscard]] InfluenceResult influence(const ResultsTable& table, std::string_view dataset,
                                        std::string_view a, std::string_view b,
                                        const PartialAssignment& fixed = {},
                                        Execution exec = Execution::kParallel);

/// Pairwise influence over a subset of hyperparameters (kept in space order).
struct InfluenceMatrix {
  std::vector<std::string> hyperparams;
  std::vector<std::string> datasets;
  /// per_dataset[d][i * k + j] = influence of hyperparams[i] on hyperparams[j].
  std::vector<std::vector<InfluenceResult>> per_dataset;

  [[nodiscard]] std::size_t size() const { return hyperparams.size(); }
  /// Unweighted mean over datasets of the per-dataset probabilities.
  [[nodiscard]] double pooled(std::size_t source, std::size_t target) const;
  [[nodiscard]] double at(std::size_t dataset, std::size_t source, std::size_t target) const {
    return per_dataset[dataset][source * size() + target].probability();
  }
  /// Differences and trials summed over datasets.
  [[nodiscard]] InfluenceResult pooled_counts(std::size_t source, std::size_t target) const;
};

/// Empty `datasets` means every dataset; empty `hyperparams` means all free ones.
[[nodiscard]] InfluenceMatrix influence_matrix(const ResultsTable& table,
                                               const std::vector<std::string>& datasets,
                                               const std::vector<std::string>& hyperparams,
                                               const PartialAssignment& fixed = {},
                                               Execution exec = Execution::kParallel);

/// Order from a row-major k x k matrix of probabilities (diagonal ignored).
[[nodiscard]] std::vector<std::string> tuning_order(const std::vector<std::string>& hyperparams,
                                                    const std::vector<double>& pooled_probabilities);

/// Most influential first: descending outgoing influence sum, ties in matrix order.
[[nodiscard]] std::vector<std::string> tuning_order(const InfluenceMatrix& matrix);

}  // namespace hpscape
