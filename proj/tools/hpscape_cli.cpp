// hpscape: command-line front end for grid-search analysis and signal preparation.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "hpscape/defaults.hpp"
#include "hpscape/errors.hpp"
#include "hpscape/influence.hpp"
#include "hpscape/parallel.hpp"
#include "hpscape/results_table.hpp"
#include "hpscape/signal.hpp"
#include "hpscape/space.hpp"
#include "hpscape/stats.hpp"
#include "hpscape/synthetic.hpp"
#include "hpscape/text.hpp"

namespace {

using hpscape::text::csv_field;
using hpscape::text::format_double;
using json = nlohmann::ordered_json;

constexpr int kUsageError = 2;
constexpr int kDataError = 1;

// ---------------------------------------------------------------------------
// Output helpers

class Csv {
 public:
  Csv& row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << csv_field(fields[i]);
    }
    out_ << '\n';
    return *this;
  }
  [[nodiscard]] std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string num(double v) { return std::isnan(v) ? std::string() : format_double(v); }

json num_json(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

/// Space values are stored as text; numeric ones go back out as JSON numbers.
json value_json(const std::string& value) {
  auto parsed = json::parse(value, nullptr, false);
  if (!parsed.is_discarded() && parsed.is_number()) return parsed;
  return value;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Writes to `path` atomically, or to stdout when no path is given.
void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    std::cout.flush();
  } else {
    hpscape::text::write_file_atomic(path, contents);
  }
}

void write_signal(const std::string& path, const hpscape::Signal& s, const std::string& format) {
  std::ostringstream out;
  if (format == "binary") {
    hpscape::write_signal_binary(out, s);
  } else {
    hpscape::write_signal_csv(out, s);
  }
  emit(path, out.str());
}

// ---------------------------------------------------------------------------
// Shared option groups

struct TableArgs {
  std::string space;
  std::string results;
  std::vector<std::string> datasets;
  std::string out;
  std::string format = "csv";
};

void add_table_options(CLI::App* cmd, TableArgs& a, bool datasets = true) {
  cmd->add_option("--space", a.space, "Hyperparameter space JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--results", a.results, "Results CSV")->required()->check(CLI::ExistingFile);
  if (datasets) cmd->add_option("--dataset", a.datasets, "Restrict to these datasets (repeatable)");
  cmd->add_option("--out", a.out, "Output file (default stdout)");
  cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

hpscape::ResultsTable load_table(const TableArgs& a) {
  return hpscape::load_results(a.results, hpscape::load_space(a.space));
}

std::vector<std::string> datasets_or_all(const hpscape::ResultsTable& t, const std::vector<std::string>& ds) {
  for (const auto& d : ds) (void)t.dataset_position(d);
  return ds.empty() ? t.datasets() : ds;
}

hpscape::PercentileTable percentile_table(const TableArgs& a) {
  const auto table = load_table(a);
  auto p = hpscape::PercentileTable::from_results(table);
  if (a.datasets.empty()) return p;
  std::vector<std::size_t> keep;
  for (const auto& d : a.datasets) keep.push_back(table.dataset_position(d));
  return p.select(keep);
}

std::vector<std::pair<std::string, std::string>> parse_pins(const std::vector<std::string>& pins) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : pins) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--fix", "expected name=value, got '" + p + "'");
    out.emplace_back(p.substr(0, eq), p.substr(eq + 1));
  }
  return out;
}

json config_json(const hpscape::HyperparamSpace& space, hpscape::ConfigIndex index) {
  json c = json::object();
  const auto config = space.config_at(index);
  for (std::size_t h = 0; h < space.size(); ++h) c[space[h].name] = value_json(space.value(config, h));
  return c;
}

std::vector<std::string> config_fields(const hpscape::HyperparamSpace& space, hpscape::ConfigIndex index) {
  std::vector<std::string> f;
  const auto config = space.config_at(index);
  for (std::size_t h = 0; h < space.size(); ++h) f.push_back(space.value(config, h));
  return f;
}

// ---------------------------------------------------------------------------
// Table commands

void run_validate(const TableArgs& a, bool require_complete) {
  const auto table = load_table(a);
  const auto report = hpscape::validate_grid(table);
  const auto total = table.space().config_count();
  if (a.format == "json") {
    json j = {{"configs", total}, {"datasets", json::array()}, {"complete", report.complete()}};
    for (const auto& m : report.per_dataset) {
      j["datasets"].push_back({{"dataset", m.dataset}, {"scored", total - m.missing}, {"missing", m.missing}});
    }
    emit(a.out, dump(j));
  } else {
    Csv csv;
    csv.row({"dataset", "scored", "missing"});
    for (const auto& m : report.per_dataset) {
      csv.row({m.dataset, std::to_string(total - m.missing), std::to_string(m.missing)});
    }
    emit(a.out, csv.str());
  }
  if (require_complete && !report.complete()) {
    for (const auto& m : report.per_dataset) {
      if (m.missing) throw hpscape::MissingRows(m.dataset + ": " + std::to_string(m.missing) + " configs unscored");
    }
  }
}

void run_summarize(const TableArgs& a, const std::string& by) {
  const auto table = load_table(a);
  const auto datasets = datasets_or_all(table, a.datasets);
  if (a.format == "json") {
    json j = json::object();
    for (const auto& d : datasets) {
      json rows = json::array();
      for (const auto& vm : hpscape::value_mean_accuracy(table, d, by)) {
        rows.push_back({{"value", value_json(vm.value)}, {"mean", vm.mean}, {"count", vm.count}});
      }
      j[d] = rows;
    }
    emit(a.out, dump(json{{"hyperparameter", by}, {"datasets", j}}));
    return;
  }
  Csv csv;
  const bool many = datasets.size() > 1;
  if (many) {
    csv.row({"dataset", "value", "mean", "count"});
  } else {
    csv.row({"value", "mean", "count"});
  }
  for (const auto& d : datasets) {
    for (const auto& vm : hpscape::value_mean_accuracy(table, d, by)) {
      std::vector<std::string> r{vm.value, num(vm.mean), std::to_string(vm.count)};
      if (many) r.insert(r.begin(), d);
      csv.row(r);
    }
  }
  emit(a.out, csv.str());
}

void run_fivenum(const TableArgs& a) {
  const auto table = load_table(a);
  Csv csv;
  csv.row({"dataset", "min", "q25", "median", "q75", "max"});
  json j = json::object();
  for (const auto& d : datasets_or_all(table, a.datasets)) {
    std::vector<double> scored;
    for (double v : table.row(table.dataset_position(d))) {
      if (!std::isnan(v)) scored.push_back(v);
    }
    const auto s = hpscape::five_number(scored);
    csv.row({d, num(s.min), num(s.q25), num(s.median), num(s.q75), num(s.max)});
    j[d] = {{"min", s.min}, {"q25", s.q25}, {"median", s.median}, {"q75", s.q75}, {"max", s.max}};
  }
  emit(a.out, a.format == "json" ? dump(j) : csv.str());
}

void run_percentile(const TableArgs& a) {
  const auto p = percentile_table(a);
  const auto& space = p.space();
  if (a.format == "json") {
    json rows = json::array();
    for (std::size_t c = 0; c < p.config_count(); ++c) {
      json pct = json::object();
      for (std::size_t b = 0; b < p.benchmark_count(); ++b) pct[p.benchmarks()[b]] = num_json(p.row(b)[c]);
      rows.push_back({{"config", config_json(space, c)}, {"percentiles", pct}});
    }
    emit(a.out, dump(json{{"benchmarks", p.benchmarks()}, {"configs", rows}}));
    return;
  }
  Csv csv;
  std::vector<std::string> header;
  for (std::size_t h = 0; h < space.size(); ++h) header.push_back(space[h].name);
  for (const auto& b : p.benchmarks()) header.push_back(b);
  csv.row(header);
  for (std::size_t c = 0; c < p.config_count(); ++c) {
    auto r = config_fields(space, c);
    for (std::size_t b = 0; b < p.benchmark_count(); ++b) r.push_back(num(p.row(b)[c]));
    csv.row(r);
  }
  emit(a.out, csv.str());
}

struct CorrelateArgs {
  std::string space;
  std::vector<std::string> results;
  std::vector<std::string> labels;
  std::string dataset;
  std::string method = "pearson";
  std::string out;
  std::string format = "csv";
};

void run_correlate(const CorrelateArgs& a) {
  const auto space = hpscape::load_space(a.space);
  std::vector<hpscape::ResultsTable> tables;
  for (const auto& path : a.results) tables.push_back(hpscape::load_results(path, space));
  auto labels = a.labels;
  if (labels.empty()) {
    for (const auto& path : a.results) labels.push_back(std::filesystem::path(path).stem().string());
  }
  if (labels.size() != tables.size()) throw CLI::ValidationError("--label", "need one label per --results file");
  const auto method = a.method == "spearman" ? hpscape::CorrelationMethod::kSpearman
                                             : hpscape::CorrelationMethod::kPearson;
  const auto m = hpscape::cross_version_correlation(tables, a.dataset, labels, method);
  if (a.format == "json") {
    json matrix = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.at(i, j) ? json(*m.at(i, j)) : json(nullptr));
      matrix.push_back(row);
    }
    json zero = json::array();
    for (auto z : m.zero_variance) zero.push_back(m.labels[z]);
    emit(a.out, dump(json{{"dataset", a.dataset}, {"method", a.method}, {"labels", m.labels},
                          {"matrix", matrix}, {"zero_variance", zero}}));
    return;
  }
  Csv csv;
  std::vector<std::string> header{""};
  header.insert(header.end(), m.labels.begin(), m.labels.end());
  csv.row(header);
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<std::string> r{m.labels[i]};
    for (std::size_t j = 0; j < m.size(); ++j) r.push_back(m.at(i, j) ? num(*m.at(i, j)) : "NA");
    csv.row(r);
  }
  emit(a.out, csv.str());
}

struct InfluenceArgs {
  TableArgs table;
  std::vector<std::string> hyperparams;
  std::vector<std::string> fix;
  std::string layout = "long";
};

hpscape::InfluenceMatrix compute_influence(const InfluenceArgs& a) {
  const auto table = load_table(a.table);
  const auto fixed = hpscape::PartialAssignment::parse(table.space(), parse_pins(a.fix));
  return hpscape::influence_matrix(table, a.table.datasets, a.hyperparams, fixed);
}

json influence_cells(const hpscape::InfluenceMatrix& m, const std::function<hpscape::InfluenceResult(std::size_t, std::size_t)>& counts,
                     const std::function<double(std::size_t, std::size_t)>& probability) {
  json out = json::object();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::object();
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j) continue;
      const auto c = counts(i, j);
      row[m.hyperparams[j]] = {{"probability", probability(i, j)}, {"differences", c.differences}, {"trials", c.trials}};
    }
    out[m.hyperparams[i]] = row;
  }
  return out;
}

void run_influence(const InfluenceArgs& a) {
  const auto m = compute_influence(a);
  const auto k = m.size();
  if (a.table.format == "json") {
    json j{{"hyperparameters", m.hyperparams}, {"datasets", m.datasets}};
    j["pooled"] = influence_cells(
        m, [&](std::size_t i, std::size_t t) { return m.pooled_counts(i, t); },
        [&](std::size_t i, std::size_t t) { return m.pooled(i, t); });
    json per = json::object();
    for (std::size_t d = 0; d < m.datasets.size(); ++d) {
      per[m.datasets[d]] = influence_cells(
          m, [&](std::size_t i, std::size_t t) { return m.per_dataset[d][i * k + t]; },
          [&](std::size_t i, std::size_t t) { return m.at(d, i, t); });
    }
    j["per_dataset"] = per;
    emit(a.table.out, dump(j));
    return;
  }
  Csv csv;
  if (a.layout == "matrix") {
    std::vector<std::string> header{""};
    header.insert(header.end(), m.hyperparams.begin(), m.hyperparams.end());
    csv.row(header);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::string> r{m.hyperparams[i]};
      for (std::size_t j = 0; j < k; ++j) r.push_back(i == j ? "" : num(m.pooled(i, j)));
      csv.row(r);
    }
  } else {
    // Pooled rows carry an empty dataset field and come first.
    csv.row({"dataset", "source", "target", "probability", "differences", "trials"});
    auto rows = [&](const std::string& ds, auto counts, auto prob) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (i == j) continue;
          const hpscape::InfluenceResult c = counts(i, j);
          csv.row({ds, m.hyperparams[i], m.hyperparams[j], num(prob(i, j)), std::to_string(c.differences),
                   std::to_string(c.trials)});
        }
      }
    };
    rows("", [&](std::size_t i, std::size_t j) { return m.pooled_counts(i, j); },
         [&](std::size_t i, std::size_t j) { return m.pooled(i, j); });
    for (std::size_t d = 0; d < m.datasets.size(); ++d) {
      rows(m.datasets[d], [&](std::size_t i, std::size_t j) { return m.per_dataset[d][i * k + j]; },
           [&](std::size_t i, std::size_t j) { return m.at(d, i, j); });
    }
  }
  emit(a.table.out, csv.str());
}

void run_order(const InfluenceArgs& a) {
  const auto m = compute_influence(a);
  const auto order = hpscape::tuning_order(m);
  std::map<std::string, double> outgoing;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j) sum += m.pooled(i, j);
    }
    outgoing[m.hyperparams[i]] = sum;
  }
  if (a.table.format == "json") {
    json rows = json::array();
    for (const auto& h : order) rows.push_back({{"hyperparameter", h}, {"outgoing_influence", outgoing[h]}});
    emit(a.table.out, dump(json{{"order", rows}}));
    return;
  }
  Csv csv;
  csv.row({"rank", "hyperparameter", "outgoing_influence"});
  for (std::size_t r = 0; r < order.size(); ++r) csv.row({std::to_string(r + 1), order[r], num(outgoing[order[r]])});
  emit(a.table.out, csv.str());
}

struct DefaultsArgs {
  TableArgs table;
  std::size_t max_m = hpscape::kDefaultMaxDefaults;
  std::string trajectory;
  std::string curve;
};

json trajectory_json(const hpscape::PercentileTable& p, const hpscape::DefaultsSequence& seq) {
  json defaults = json::array();
  for (std::size_t k = 0; k < seq.size(); ++k) {
    json pct = json::object();
    for (std::size_t b = 0; b < p.benchmark_count(); ++b) pct[p.benchmarks()[b]] = p.row(b)[seq.configs[k]];
    defaults.push_back({{"no", k + 1},
                        {"index", seq.configs[k]},
                        {"config", config_json(p.space(), seq.configs[k])},
                        {"percentiles", pct},
                        {"expected_best", seq.trajectory[k]}});
  }
  return json{{"benchmarks", p.benchmarks()}, {"defaults", defaults}, {"trajectory", seq.trajectory}};
}

void run_defaults(const DefaultsArgs& a) {
  const auto p = percentile_table(a.table);
  const auto seq = hpscape::greedy_defaults(p, a.max_m);
  if (!a.trajectory.empty()) emit(a.trajectory, dump(trajectory_json(p, seq)));
  if (!a.curve.empty()) {
    Csv curve;
    curve.row({"k", "E"});
    for (std::size_t k = 1; k <= seq.size(); ++k) curve.row({std::to_string(k), num(hpscape::performance_curve(seq, k))});
    emit(a.curve, curve.str());
  }
  if (a.table.format == "json") {
    emit(a.table.out, dump(trajectory_json(p, seq)));
    return;
  }
  // One row per default: its values, then its own percentile on each benchmark.
  Csv csv;
  std::vector<std::string> header{"no"};
  for (std::size_t h = 0; h < p.space().size(); ++h) header.push_back(p.space()[h].name);
  for (const auto& b : p.benchmarks()) header.push_back(b);
  csv.row(header);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    std::vector<std::string> r{std::to_string(k + 1)};
    for (auto& f : config_fields(p.space(), seq.configs[k])) r.push_back(std::move(f));
    for (std::size_t b = 0; b < p.benchmark_count(); ++b) r.push_back(num(p.row(b)[seq.configs[k]]));
    csv.row(r);
  }
  emit(a.table.out, csv.str());
}

void run_loo(const DefaultsArgs& a) {
  const auto p = percentile_table(a.table);
  const auto report = hpscape::loo_evaluate(p, a.max_m);
  if (a.table.format == "json") {
    json folds = json::array();
    for (const auto& f : report.folds) {
      folds.push_back({{"held_out", f.held_out},
                       {"holdout_best", f.holdout_best},
                       {"defaults", f.defaults.configs},
                       {"trajectory", f.defaults.trajectory}});
    }
    emit(a.table.out, dump(json{{"folds", folds}, {"mean_holdout_best", report.mean_holdout_best}}));
    return;
  }
  Csv csv;
  csv.row({"held_out", "holdout_best", "defaults"});
  for (const auto& f : report.folds) {
    csv.row({f.held_out, num(f.holdout_best), std::to_string(f.defaults.size())});
  }
  csv.row({"mean", num(report.mean_holdout_best), ""});
  emit(a.table.out, csv.str());
}

// ---------------------------------------------------------------------------
// Signal commands

struct SignalArgs {
  std::vector<std::string> inputs;
  double rate = 0.0;
  std::string out;
  std::string format = "csv";
};

void add_signal_options(CLI::App* cmd, SignalArgs& a) {
  cmd->add_option("--input", a.inputs, "Signal file (CSV or binary)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--rate", a.rate, "Sample rate in Hz for CSV input");
  cmd->add_option("--out", a.out, "Output file")->required();
}

void run_window(const SignalArgs& a, std::size_t length, const std::vector<std::string>& labels) {
  if (!labels.empty() && labels.size() != a.inputs.size()) {
    throw CLI::ValidationError("--label", "need one label per --input file");
  }
  hpscape::WindowSet all;
  all.length = length;
  for (std::size_t i = 0; i < a.inputs.size(); ++i) {
    const auto s = hpscape::load_signal(a.inputs[i], a.rate);
    auto w = hpscape::window(s, length, labels.empty() ? std::string() : labels[i]);
    if (i == 0) all.rate = s.rate;
    if (s.rate != all.rate) throw hpscape::DomainError(a.inputs[i] + ": sample rate differs from the first input");
    for (auto& x : w.windows) all.windows.push_back(std::move(x));
    for (auto& l : w.labels) all.labels.push_back(std::move(l));
  }
  std::ostringstream out;
  hpscape::write_windows_csv(out, all);
  emit(a.out, out.str());
}

void run_resample(const SignalArgs& a, int factor) {
  if (a.inputs.size() != 1) throw CLI::ValidationError("--input", "resample takes one input");
  write_signal(a.out, hpscape::resample(hpscape::load_signal(a.inputs[0], a.rate), factor), a.format);
}

void run_filter(const SignalArgs& a, double cutoff) {
  if (a.inputs.size() != 1) throw CLI::ValidationError("--input", "filter takes one input");
  write_signal(a.out, hpscape::lowpass(hpscape::load_signal(a.inputs[0], a.rate), cutoff), a.format);
}

struct SplitArgs {
  std::string input;
  double rate = 1.0;
  double fraction = 0.0;
  std::uint64_t seed = 0;
  std::string train_out;
  std::string test_out;
};

void run_split(const SplitArgs& a) {
  std::istringstream in(hpscape::text::read_file(a.input));
  const auto set = hpscape::parse_windows_csv(in, a.rate, a.input);
  const auto [train, test] = hpscape::split(set, a.fraction, a.seed);
  std::ostringstream tr, te;
  hpscape::write_windows_csv(tr, train);
  hpscape::write_windows_csv(te, test);
  emit(a.train_out, tr.str());
  emit(a.test_out, te.str());
}

struct SynthArgs {
  std::string space;
  std::string spec;
  std::size_t benchmarks = 1;
  std::optional<std::uint64_t> seed;
  hpscape::RandomLandscapeOptions options;
  std::string out;
};

void run_synth(const SynthArgs& a) {
  hpscape::LandscapeSpec spec;
  if (!a.spec.empty()) {
    spec = hpscape::load_landscape_spec(a.spec);
    if (a.seed) spec.seed = *a.seed;
  } else {
    if (a.space.empty()) throw CLI::ValidationError("--space", "required unless --spec is given");
    if (!a.seed) throw CLI::ValidationError("--seed", "required unless --spec is given");
    spec = hpscape::random_landscape(hpscape::load_space(a.space), a.benchmarks, *a.seed, a.options);
  }
  std::ostringstream out;
  hpscape::write_results(out, hpscape::generate(spec));
  emit(a.out, out.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-search landscape analysis and vibration-signal preparation", "hpscape"};
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = 0;
  app.add_option("--jobs,-j", jobs, "Worker threads (default: all cores); results do not depend on it")
      ->check(CLI::NonNegativeNumber);

  std::function<void()> action;
  auto on = [&](CLI::App* cmd, std::function<void()> f) { cmd->callback([&action, f] { action = f; }); };

  TableArgs validate_args;
  bool require_complete = false;
  auto* validate = app.add_subcommand("validate", "Load a results table and count unscored configs per dataset");
  add_table_options(validate, validate_args, false);
  validate->add_flag("--require-complete", require_complete, "Exit 1 when any dataset has unscored configs");
  on(validate, [&] { run_validate(validate_args, require_complete); });

  TableArgs summarize_args;
  std::string by;
  auto* summarize = app.add_subcommand("summarize", "Mean accuracy per value of one hyperparameter");
  add_table_options(summarize, summarize_args);
  summarize->add_option("--by", by, "Hyperparameter to group by")->required();
  on(summarize, [&] { run_summarize(summarize_args, by); });

  TableArgs fivenum_args;
  auto* fivenum = app.add_subcommand("fivenum", "Min, quartiles and max of accuracy per dataset");
  add_table_options(fivenum, fivenum_args);
  on(fivenum, [&] { run_fivenum(fivenum_args); });

  TableArgs percentile_args;
  auto* percentile = app.add_subcommand("percentile", "Rank percentile of every config on every dataset");
  add_table_options(percentile, percentile_args);
  on(percentile, [&] { run_percentile(percentile_args); });

  CorrelateArgs correlate_args;
  auto* correlate = app.add_subcommand("correlate", "Correlate one dataset's accuracies across table versions");
  correlate->add_option("--space", correlate_args.space, "Hyperparameter space JSON")->required()->check(CLI::ExistingFile);
  correlate->add_option("--results", correlate_args.results, "Results CSV per version (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  correlate->add_option("--label", correlate_args.labels, "Label per version (default: file stem)");
  correlate->add_option("--dataset", correlate_args.dataset, "Dataset to correlate")->required();
  correlate->add_option("--method", correlate_args.method, "Correlation")->check(CLI::IsMember({"pearson", "spearman"}));
  correlate->add_option("--out", correlate_args.out, "Output file (default stdout)");
  correlate->add_option("--format", correlate_args.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  on(correlate, [&] { run_correlate(correlate_args); });

  InfluenceArgs influence_args;
  auto add_influence_options = [](CLI::App* cmd, InfluenceArgs& a) {
    add_table_options(cmd, a.table);
    cmd->add_option("--hyperparam", a.hyperparams, "Restrict to these hyperparameters (repeatable)");
    cmd->add_option("--fix", a.fix, "Pin a hyperparameter, name=value (repeatable)");
  };
  auto* influence = app.add_subcommand("influence", "Pairwise tuning influence between hyperparameters");
  add_influence_options(influence, influence_args);
  influence->add_option("--layout", influence_args.layout, "CSV layout")->check(CLI::IsMember({"long", "matrix"}));
  on(influence, [&] { run_influence(influence_args); });

  InfluenceArgs order_args;
  auto* order = app.add_subcommand("order", "Tuning order by total outgoing influence");
  add_influence_options(order, order_args);
  on(order, [&] { run_order(order_args); });

  DefaultsArgs defaults_args;
  auto* defaults = app.add_subcommand("defaults", "Greedy sequence of multiple default configs");
  add_table_options(defaults, defaults_args.table);
  defaults->add_option("--max-m", defaults_args.max_m, "Upper bound on the number of defaults")->check(CLI::PositiveNumber);
  defaults->add_option("--trajectory", defaults_args.trajectory, "Also write the JSON trajectory here");
  defaults->add_option("--curve", defaults_args.curve, "Also write the k,E curve CSV here");
  on(defaults, [&] { run_defaults(defaults_args); });

  DefaultsArgs loo_args;
  auto* loo = app.add_subcommand("loo", "Leave-one-benchmark-out evaluation of the defaults search");
  add_table_options(loo, loo_args.table);
  loo->add_option("--max-m", loo_args.max_m, "Upper bound on the number of defaults")->check(CLI::PositiveNumber);
  on(loo, [&] { run_loo(loo_args); });

  SignalArgs window_args;
  std::size_t window_length = 2048;
  std::vector<std::string> window_labels;
  auto* window = app.add_subcommand("window", "Cut signals into non-overlapping windows");
  add_signal_options(window, window_args);
  window->add_option("--length", window_length, "Samples per window")->check(CLI::PositiveNumber);
  window->add_option("--label", window_labels, "Class label per input (repeatable)");
  on(window, [&] { run_window(window_args, window_length, window_labels); });

  SignalArgs resample_args;
  int factor = 0;
  auto* resample = app.add_subcommand("resample", "Anti-aliased integer-factor decimation");
  add_signal_options(resample, resample_args);
  resample->add_option("--factor", factor, "Decimation factor (>= 2)")->required();
  resample->add_option("--format", resample_args.format, "Output format")->check(CLI::IsMember({"csv", "binary"}));
  on(resample, [&] { run_resample(resample_args, factor); });

  SignalArgs filter_args;
  double cutoff = 0.0;
  auto* filter = app.add_subcommand("filter", "Zero-phase Butterworth lowpass");
  add_signal_options(filter, filter_args);
  filter->add_option("--cutoff", cutoff, "Cutoff in Hz (-3 dB)")->required();
  filter->add_option("--format", filter_args.format, "Output format")->check(CLI::IsMember({"csv", "binary"}));
  on(filter, [&] { run_filter(filter_args, cutoff); });

  SplitArgs split_args;
  auto* split = app.add_subcommand("split", "Stratified train/test split of labeled windows");
  split->add_option("--input", split_args.input, "Windows CSV")->required()->check(CLI::ExistingFile);
  split->add_option("--rate", split_args.rate, "Sample rate carried with the windows");
  split->add_option("--train-fraction", split_args.fraction, "Share of each class sent to train")->required();
  split->add_option("--seed", split_args.seed, "Shuffle seed")->required();
  split->add_option("--train-out", split_args.train_out, "Train windows CSV")->required();
  split->add_option("--test-out", split_args.test_out, "Test windows CSV")->required();
  on(split, [&] { run_split(split_args); });

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic results table");
  synth->add_option("--spec", synth_args.spec, "Landscape spec JSON")->check(CLI::ExistingFile);
  synth->add_option("--space", synth_args.space, "Space JSON for a random landscape")->check(CLI::ExistingFile);
  synth->add_option("--benchmarks", synth_args.benchmarks, "Benchmarks in a random landscape")
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_args.seed, "Seed (overrides the spec's)");
  synth->add_option("--interactions", synth_args.options.interaction_count, "Random pairwise interaction terms");
  synth->add_option("--interaction-scale", synth_args.options.interaction_scale, "Interaction effect bound");
  synth->add_option("--noise", synth_args.options.noise, "Uniform noise half-width");
  synth->add_option("--resolution", synth_args.options.resolution, "Round accuracies to this grid");
  synth->add_option("--out", synth_args.out, "Output results CSV (default stdout)");
  on(synth, [&] { run_synth(synth_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    hpscape::set_worker_count(jobs);
    action();
  } catch (const CLI::Error& e) {
    std::cerr << "hpscape: " << e.what() << "\n";
    return kUsageError;
  } catch (const hpscape::Error& e) {
    std::cerr << "hpscape: " << e.what() << "\n";
    return kDataError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "hpscape: " << e.what() << "\n";
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "hpscape: " << e.what() << "\n";
    return kDataError;
  }
  return 0;
}
