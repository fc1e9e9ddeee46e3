#pragma once

#include <cmath>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpscape/space.hpp"

namespace hpscape {

/// Completed (or partial) grid search: accuracy in [0,1] per (config, dataset).
///
/// Storage is dense, dataset-major, with NaN marking configs that have no
/// entry. Tables are filled once during construction and are read-only
/// afterwards, so concurrent readers need no synchronisation.
class ResultsTable {
 public:
  ResultsTable() = default;
  ResultsTable(HyperparamSpace space, std::vector<std::string> datasets);

  [[nodiscard]] const HyperparamSpace& space() const { return space_; }
  [[nodiscard]] const std::vector<std::string>& datasets() const { return datasets_; }
  [[nodiscard]] std::size_t dataset_count() const { return datasets_.size(); }

  [[nodiscard]] std::optional<std::size_t> find_dataset(std::string_view id) const;
  /// Throws UnknownDataset.
  [[nodiscard]] std::size_t dataset_position(std::string_view id) const;
  /// Appends a dataset id if absent and returns its position.
  std::size_t add_dataset(const std::string& id);

  /// Throws RangeError for non-finite or out-of-[0,1] values and
  /// DuplicateError when the cell is already filled.
  void insert(ConfigIndex config, std::size_t dataset, double accuracy);

  [[nodiscard]] bool has(ConfigIndex config, std::size_t dataset) const {
    return !std::isnan(row(dataset)[config]);
  }
  [[nodiscard]] std::optional<double> accuracy(ConfigIndex config, std::size_t dataset) const;
  /// All configs of one dataset in ConfigIndex order; NaN where missing.
  [[nodiscard]] std::span<const double> row(std::size_t dataset) const;

  [[nodiscard]] std::size_t entry_count() const { return entries_; }
  [[nodiscard]] bool complete() const {
    return entries_ == space_.config_count() * datasets_.size();
  }

  /// Copy with every accuracy passed through `f` (which must map [0,1] into [0,1]).
  template <class F>
  [[nodiscard]] ResultsTable transformed(F&& f) const {
    ResultsTable out = *this;
    for (double& v : out.cells_) {
      if (!std::isnan(v)) v = f(v);
    }
    return out;
  }

 private:
  HyperparamSpace space_;
  std::vector<std::string> datasets_;
  std::vector<double> cells_;
  std::size_t entries_ = 0;
};

struct MissingCount {
  std::string dataset;
  std::uint64_t missing = 0;
};

struct GridReport {
  std::vector<MissingCount> per_dataset;
  [[nodiscard]] bool complete() const;
};

[[nodiscard]] GridReport validate_grid(const ResultsTable& table);

// Long-format CSV: one column per hyperparameter (by name), then `dataset`,
// then `accuracy`. Errors name `source` and the 1-based line number.
[[nodiscard]] ResultsTable parse_results(std::istream& in, const HyperparamSpace& space,
                                         const std::string& source = "<results>");
[[nodiscard]] ResultsTable load_results(const std::string& path, const HyperparamSpace& space);
/// Rows ordered by ConfigIndex then dataset order; missing cells are skipped.
void write_results(std::ostream& out, const ResultsTable& table);

}  // namespace hpscape
