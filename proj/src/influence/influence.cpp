#include "hpscape/influence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hpscape/errors.hpp"
#include "hpscape/kernels.hpp"

namespace hpscape {

namespace {

std::string describe(const HyperparamSpace& space, ConfigIndex index) {
  std::string s = "(";
  for (std::size_t h = 0; h < space.size(); ++h) {
    if (h) s += ", ";
    s += space[h].name + "=" + space[h].values[space.level_at(index, h)];
  }
  return s + ")";
}

kernels::InfluenceProblem make_problem(const ResultsTable& table, std::size_t dataset, std::size_t a,
                                       std::size_t b, const PartialAssignment& fixed) {
  const auto& space = table.space();
  if (a >= space.size() || b >= space.size()) throw UnknownHyperparam("hyperparameter position out of range");
  if (a == b) throw SameHyperparam("influence of '" + space[a].name + "' on itself is undefined");
  if (fixed.pinned(a) || fixed.pinned(b)) {
    throw DomainError("'" + space[fixed.pinned(a) ? a : b].name + "' is tuned and cannot also be pinned");
  }
  if (dataset >= table.dataset_count()) throw UnknownDataset("dataset position out of range");

  kernels::InfluenceProblem p;
  p.accuracy = table.row(dataset);
  p.a = a;
  p.b = b;
  p.start_count = 1;
  for (std::size_t h = 0; h < space.size(); ++h) {
    p.strides.push_back(space.stride(h));
    p.sizes.push_back(static_cast<std::uint32_t>(space.domain_size(h)));
    if (auto level = fixed.level(h)) {
      p.base += *level * space.stride(h);
    } else {
      p.free.push_back(h);
      p.start_count *= space.domain_size(h);
    }
  }
  // Every sweep stays inside the restricted subspace, so completeness of
  // that subspace is exactly the precondition.
  for (ConfigIndex t = 0; t < p.start_count; ++t) {
    const auto c = p.start(t);
    if (std::isnan(p.accuracy[c])) {
      throw MissingRows("no accuracy for " + describe(space, c) + " on dataset '" + table.datasets()[dataset] + "'");
    }
  }
  return p;
}

}  // namespace

std::uint32_t tune_level(const ResultsTable& table, std::size_t dataset, const Config& config,
                         std::size_t hyperparam) {
  const auto& space = table.space();
  const auto index = space.index_of(config);
  const auto row = table.row(dataset);
  const auto stride = space.stride(hyperparam);
  const auto size = static_cast<std::uint32_t>(space.domain_size(hyperparam));
  const ConfigIndex origin = index - config.levels[hyperparam] * stride;
  for (std::uint32_t v = 0; v < size; ++v) {
    if (std::isnan(row[origin + v * stride])) {
      throw MissingRows("sweep of '" + space[hyperparam].name + "' is missing " +
                        describe(space, origin + v * stride) + " on dataset '" + table.datasets()[dataset] + "'");
    }
  }
  return kernels::argmax_level(row, index, stride, size);
}

std::string tune(const ResultsTable& table, std::string_view dataset, const Config& config,
                 std::string_view hyperparam) {
  const auto hp = table.space().position(hyperparam);
  return table.space()[hp].values[tune_level(table, table.dataset_position(dataset), config, hp)];
}

InfluenceResult influence(const ResultsTable& table, std::size_t dataset, std::size_t a, std::size_t b,
                          const PartialAssignment& fixed, Execution exec) {
  const auto problem = make_problem(table, dataset, a, b, fixed);
  const auto counts =
      exec == Execution::kParallel ? kernels::influence_parallel(problem) : kernels::influence_serial(problem);
  return {counts.differences, counts.trials};
}

InfluenceResult influence(const ResultsTable& table, std::string_view dataset, std::string_view a,
                          std::string_view b, const PartialAssignment& fixed, Execution exec) {
  const auto& space = table.space();
  return influence(table, table.dataset_position(dataset), space.position(a), space.position(b), fixed, exec);
}

double InfluenceMatrix::pooled(std::size_t source, std::size_t target) const {
  if (per_dataset.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t d = 0; d < per_dataset.size(); ++d) sum += at(d, source, target);
  return sum / static_cast<double>(per_dataset.size());
}

InfluenceResult InfluenceMatrix::pooled_counts(std::size_t source, std::size_t target) const {
  InfluenceResult total;
  for (const auto& m : per_dataset) {
    total.differences += m[source * size() + target].differences;
    total.trials += m[source * size() + target].trials;
  }
  return total;
}

InfluenceMatrix influence_matrix(const ResultsTable& table, const std::vector<std::string>& datasets,
                                 const std::vector<std::string>& hyperparams, const PartialAssignment& fixed,
                                 Execution exec) {
  const auto& space = table.space();
  std::vector<std::size_t> hps;
  if (hyperparams.empty()) {
    for (std::size_t h = 0; h < space.size(); ++h) {
      if (!fixed.pinned(h)) hps.push_back(h);
    }
  } else {
    for (const auto& name : hyperparams) hps.push_back(space.position(name));
    std::sort(hps.begin(), hps.end());
    if (std::adjacent_find(hps.begin(), hps.end()) != hps.end()) {
      throw DomainError("hyperparameter listed twice in influence subset");
    }
  }

  InfluenceMatrix m;
  for (auto h : hps) m.hyperparams.push_back(space[h].name);
  std::vector<std::size_t> ds;
  if (datasets.empty()) {
    for (std::size_t d = 0; d < table.dataset_count(); ++d) ds.push_back(d);
  } else {
    for (const auto& name : datasets) ds.push_back(table.dataset_position(name));
  }
  const auto k = hps.size();
  for (auto d : ds) {
    m.datasets.push_back(table.datasets()[d]);
    std::vector<InfluenceResult> cells(k * k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (i != j) cells[i * k + j] = influence(table, d, hps[i], hps[j], fixed, exec);
      }
    }
    m.per_dataset.push_back(std::move(cells));
  }
  return m;
}

std::vector<std::string> tuning_order(const std::vector<std::string>& hyperparams,
                                      const std::vector<double>& probabilities) {
  const auto k = hyperparams.size();
  if (probabilities.size() != k * k) throw DomainError("influence matrix must be square over the hyperparameters");
  std::vector<double> outgoing(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j) outgoing[i] += probabilities[i * k + j];
    }
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return outgoing[x] > outgoing[y]; });
  std::vector<std::string> out;
  for (auto i : order) out.push_back(hyperparams[i]);
  return out;
}

std::vector<std::string> tuning_order(const InfluenceMatrix& matrix) {
  const auto k = matrix.size();
  std::vector<double> pooled(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j) pooled[i * k + j] = matrix.pooled(i, j);
    }
  }
  return tuning_order(matrix.hyperparams, pooled);
}

}  // namespace hpscape
