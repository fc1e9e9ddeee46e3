#include "hpscape/results_table.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "hpscape/errors.hpp"
#include "hpscape/text.hpp"

namespace hpscape {

namespace {
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
}

ResultsTable::ResultsTable(HyperparamSpace space, std::vector<std::string> datasets)
    : space_(std::move(space)) {
  for (auto& d : datasets) {
    if (find_dataset(d)) throw DuplicateError("dataset '" + d + "' listed twice");
    add_dataset(d);
  }
}

std::optional<std::size_t> ResultsTable::find_dataset(std::string_view id) const {
  for (std::size_t i = 0; i < datasets_.size(); ++i) {
    if (datasets_[i] == id) return i;
  }
  return std::nullopt;
}

std::size_t ResultsTable::dataset_position(std::string_view id) const {
  if (auto i = find_dataset(id)) return *i;
  throw UnknownDataset("unknown dataset '" + std::string(id) + "'");
}

std::size_t ResultsTable::add_dataset(const std::string& id) {
  if (auto i = find_dataset(id)) return *i;
  datasets_.push_back(id);
  cells_.resize(cells_.size() + static_cast<std::size_t>(space_.config_count()), kMissing);
  return datasets_.size() - 1;
}

void ResultsTable::insert(ConfigIndex config, std::size_t dataset, double accuracy) {
  if (config >= space_.config_count() || dataset >= datasets_.size()) {
    throw DomainError("cell outside the table");
  }
  if (!std::isfinite(accuracy) || accuracy < 0.0 || accuracy > 1.0) {
    throw RangeError("accuracy " + text::format_double(accuracy) + " outside [0,1]");
  }
  double& cell = cells_[dataset * space_.config_count() + config];
  if (!std::isnan(cell)) throw DuplicateError("duplicate entry for config and dataset '" + datasets_[dataset] + "'");
  cell = accuracy;
  ++entries_;
}

std::optional<double> ResultsTable::accuracy(ConfigIndex config, std::size_t dataset) const {
  const double v = row(dataset)[config];
  if (std::isnan(v)) return std::nullopt;
  return v;
}

std::span<const double> ResultsTable::row(std::size_t dataset) const {
  const auto n = static_cast<std::size_t>(space_.config_count());
  return std::span<const double>(cells_).subspan(dataset * n, n);
}

bool GridReport::complete() const {
  for (const auto& m : per_dataset) {
    if (m.missing != 0) return false;
  }
  return true;
}

GridReport validate_grid(const ResultsTable& table) {
  GridReport report;
  for (std::size_t d = 0; d < table.dataset_count(); ++d) {
    std::uint64_t missing = 0;
    for (double v : table.row(d)) missing += std::isnan(v) ? 1 : 0;
    report.per_dataset.push_back({table.datasets()[d], missing});
  }
  return report;
}

ResultsTable parse_results(std::istream& in, const HyperparamSpace& space, const std::string& source) {
  auto where = [&](std::size_t line) { return source + ":" + std::to_string(line) + ": "; };

  std::string line;
  std::size_t line_no = 0;
  std::optional<std::vector<std::string>> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!text::trim(line).empty()) {
      header = text::split_csv(line);
      if (!header) throw ParseError(where(line_no) + "unterminated quote in header");
      break;
    }
  }
  if (!header) throw ParseError(source + ": missing header row");
  if (!header->empty() && header->front().rfind("\xEF\xBB\xBF", 0) == 0) header->front().erase(0, 3);

  // Column position of each hyperparameter, then dataset and accuracy.
  std::vector<std::size_t> hp_column(space.size(), SIZE_MAX);
  std::size_t dataset_column = SIZE_MAX;
  std::size_t accuracy_column = SIZE_MAX;
  for (std::size_t c = 0; c < header->size(); ++c) {
    const auto& name = (*header)[c];
    std::size_t* slot = nullptr;
    if (name == "dataset") {
      slot = &dataset_column;
    } else if (name == "accuracy") {
      slot = &accuracy_column;
    } else if (auto hp = space.find(name)) {
      slot = &hp_column[*hp];
    } else {
      throw ParseError(where(line_no) + "unexpected column '" + name + "'");
    }
    if (*slot != SIZE_MAX) throw ParseError(where(line_no) + "column '" + name + "' appears twice");
    *slot = c;
  }
  for (std::size_t h = 0; h < space.size(); ++h) {
    if (hp_column[h] == SIZE_MAX) throw ParseError(where(line_no) + "missing column '" + space[h].name + "'");
  }
  if (dataset_column == SIZE_MAX) throw ParseError(where(line_no) + "missing column 'dataset'");
  if (accuracy_column == SIZE_MAX) throw ParseError(where(line_no) + "missing column 'accuracy'");

  ResultsTable table(space, {});
  Config config;
  config.levels.resize(space.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto fields = text::split_csv(line);
    if (!fields) throw ParseError(where(line_no) + "unterminated quote");
    if (fields->size() != header->size()) {
      throw ParseError(where(line_no) + "expected " + std::to_string(header->size()) + " fields, found " +
                       std::to_string(fields->size()));
    }
    for (std::size_t h = 0; h < space.size(); ++h) {
      const auto& cell = (*fields)[hp_column[h]];
      auto level = space.level_of(h, cell);
      if (!level) {
        throw DomainError(where(line_no) + "value '" + cell + "' not in domain of '" + space[h].name + "'");
      }
      config.levels[h] = *level;
    }
    const auto& dataset = (*fields)[dataset_column];
    if (dataset.empty()) throw ParseError(where(line_no) + "empty dataset id");
    const auto accuracy = text::parse_double((*fields)[accuracy_column]);
    if (!accuracy) throw ParseError(where(line_no) + "accuracy '" + (*fields)[accuracy_column] + "' is not a number");
    if (!std::isfinite(*accuracy) || *accuracy < 0.0 || *accuracy > 1.0) {
      throw RangeError(where(line_no) + "accuracy " + (*fields)[accuracy_column] + " outside [0,1]");
    }
    const auto d = table.add_dataset(dataset);
    const auto index = space.index_of(config);
    if (table.has(index, d)) throw DuplicateError(where(line_no) + "duplicate row for this config on dataset '" + dataset + "'");
    table.insert(index, d, *accuracy);
  }
  return table;
}

ResultsTable load_results(const std::string& path, const HyperparamSpace& space) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return parse_results(in, space, path);
}

void write_results(std::ostream& out, const ResultsTable& table) {
  const auto& space = table.space();
  for (const auto& hp : space.hyperparams()) out << text::csv_field(hp.name) << ',';
  out << "dataset,accuracy\n";
  for (ConfigIndex c = 0; c < space.config_count(); ++c) {
    for (std::size_t d = 0; d < table.dataset_count(); ++d) {
      const auto acc = table.accuracy(c, d);
      if (!acc) continue;
      for (std::size_t h = 0; h < space.size(); ++h) {
        out << text::csv_field(space[h].values[space.level_at(c, h)]) << ',';
      }
      out << text::csv_field(table.datasets()[d]) << ',' << text::format_double(*acc) << '\n';
    }
  }
}

}  // namespace hpscape
