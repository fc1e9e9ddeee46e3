#include "hpscape/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hpscape/errors.hpp"

namespace hpscape {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::vector<ValueMean> value_mean_accuracy(const ResultsTable& table, std::string_view dataset,
                                           std::string_view hyperparam) {
  const auto& space = table.space();
  const auto hp = space.position(hyperparam);
  const auto d = table.dataset_position(dataset);
  const auto row = table.row(d);

  std::vector<double> sums(space.domain_size(hp), 0.0);
  std::vector<std::size_t> counts(space.domain_size(hp), 0);
  for (ConfigIndex c = 0; c < space.config_count(); ++c) {
    if (std::isnan(row[c])) continue;
    const auto level = space.level_at(c, hp);
    sums[level] += row[c];
    ++counts[level];
  }
  std::vector<ValueMean> out;
  for (std::size_t v = 0; v < sums.size(); ++v) {
    if (counts[v] == 0) continue;
    out.push_back({space[hp].values[v], sums[v] / static_cast<double>(counts[v]), counts[v]});
  }
  return out;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw EmptyInput("quantile of an empty list");
  const double pos = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0 || sorted[lo] == sorted[hi]) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

FiveNumberSummary five_number(std::span<const double> values) {
  if (values.empty()) throw EmptyInput("five-number summary of an empty list");
  std::vector<double> sorted(values.begin(), values.end());
  if (std::any_of(sorted.begin(), sorted.end(), [](double v) { return std::isnan(v); })) {
    throw RangeError("five-number summary input contains NaN");
  }
  std::sort(sorted.begin(), sorted.end());
  return {sorted.front(), quantile_sorted(sorted, 0.25), quantile_sorted(sorted, 0.5),
          quantile_sorted(sorted, 0.75), sorted.back()};
}

std::vector<double> percentiles_of(std::span<const double> values) {
  std::vector<double> scored;
  scored.reserve(values.size());
  for (double v : values) {
    if (!std::isnan(v)) scored.push_back(v);
  }
  if (scored.size() < 2) {
    throw TooFewConfigs("percentiles need at least 2 scored configs, found " + std::to_string(scored.size()));
  }
  std::sort(scored.begin(), scored.end());
  const double denom = static_cast<double>(scored.size() - 1);
  std::vector<double> out(values.size(), kNaN);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) continue;
    // Strictly lower scores = position of the first element not less than v.
    const auto below = std::lower_bound(scored.begin(), scored.end(), values[i]) - scored.begin();
    out[i] = static_cast<double>(below) / denom;
  }
  return out;
}

std::vector<double> percentile_transform(const ResultsTable& table, std::string_view dataset) {
  return percentiles_of(table.row(table.dataset_position(dataset)));
}

PercentileTable::PercentileTable(HyperparamSpace space, std::vector<std::string> benchmarks,
                                 std::vector<std::vector<double>> rows)
    : space_(std::move(space)), benchmarks_(std::move(benchmarks)), rows_(std::move(rows)) {
  if (benchmarks_.size() != rows_.size()) throw DomainError("one percentile row per benchmark required");
  for (const auto& r : rows_) {
    if (r.size() != space_.config_count()) throw DomainError("percentile row length differs from space size");
    for (double v : r) {
      if (!std::isnan(v) && (v < 0.0 || v > 1.0)) throw RangeError("percentile outside [0,1]");
    }
  }
}

PercentileTable PercentileTable::from_results(const ResultsTable& table) {
  std::vector<std::vector<double>> rows;
  rows.reserve(table.dataset_count());
  for (std::size_t d = 0; d < table.dataset_count(); ++d) {
    try {
      rows.push_back(percentiles_of(table.row(d)));
    } catch (const TooFewConfigs& e) {
      throw TooFewConfigs("dataset '" + table.datasets()[d] + "': " + e.what());
    }
  }
  return PercentileTable(table.space(), table.datasets(), std::move(rows));
}

PercentileTable PercentileTable::select(const std::vector<std::size_t>& benchmarks) const {
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  for (auto b : benchmarks) {
    names.push_back(benchmarks_.at(b));
    rows.push_back(rows_.at(b));
  }
  return PercentileTable(space_, std::move(names), std::move(rows));
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("correlation inputs differ in length");
  if (x.size() < 2) throw TooFewConfigs("correlation needs at least 2 values");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

CorrelationMatrix cross_version_correlation(std::span<const ResultsTable> tables, std::string_view dataset,
                                            std::vector<std::string> labels, CorrelationMethod method) {
  if (tables.empty()) throw EmptyInput("no tables to correlate");
  if (labels.empty()) {
    for (std::size_t i = 0; i < tables.size(); ++i) labels.push_back("v" + std::to_string(i));
  }
  if (labels.size() != tables.size()) throw DomainError("one label per table required");
  const auto& space = tables.front().space();
  if (space.config_count() < 2) throw TooFewConfigs("correlation needs at least 2 configs");

  std::vector<std::span<const double>> rows;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    if (!(tables[t].space() == space)) throw SpaceMismatch("table '" + labels[t] + "' has a different space");
    const auto row = tables[t].row(tables[t].dataset_position(dataset));
    if (std::any_of(row.begin(), row.end(), [](double v) { return std::isnan(v); })) {
      throw MissingRows("table '" + labels[t] + "' is incomplete for dataset '" + std::string(dataset) + "'");
    }
    rows.push_back(row);
  }

  CorrelationMatrix m;
  m.labels = std::move(labels);
  const auto k = tables.size();
  m.values.assign(k * k, std::nullopt);
  std::vector<bool> constant(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto [lo, hi] = std::minmax_element(rows[i].begin(), rows[i].end());
    constant[i] = *lo == *hi;
    if (constant[i]) m.zero_variance.push_back(i);
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!constant[i]) m.values[i * k + i] = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (constant[i] || constant[j]) continue;
      const auto r = method == CorrelationMethod::kPearson ? pearson(rows[i], rows[j]) : spearman(rows[i], rows[j]);
      m.values[i * k + j] = r;
      m.values[j * k + i] = r;
    }
  }
  return m;
}

}  // namespace hpscape
