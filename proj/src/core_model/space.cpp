#include "hpscape/space.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "hpscape/errors.hpp"
#include "hpscape/text.hpp"

namespace hpscape {

HyperparamSpace::HyperparamSpace(std::vector<Hyperparam> hyperparams) : hyperparams_(std::move(hyperparams)) {
  std::set<std::string> names;
  for (const auto& hp : hyperparams_) {
    if (hp.name.empty()) throw DomainError("hyperparameter with empty name");
    if (!names.insert(hp.name).second) throw DomainError("duplicate hyperparameter name '" + hp.name + "'");
    if (hp.values.empty()) throw DomainError("hyperparameter '" + hp.name + "' has an empty domain");
    std::set<std::string> seen;
    for (const auto& v : hp.values) {
      if (!seen.insert(v).second) {
        throw DomainError("hyperparameter '" + hp.name + "' lists value '" + v + "' twice");
      }
    }
  }
  strides_.assign(hyperparams_.size(), 1);
  count_ = 1;
  for (std::size_t i = hyperparams_.size(); i-- > 0;) {
    strides_[i] = count_;
    count_ *= hyperparams_[i].values.size();
    if (count_ > kMaxConfigs) throw DomainError("hyperparameter space too large");
  }
}

std::optional<std::size_t> HyperparamSpace::find(std::string_view name) const {
  for (std::size_t i = 0; i < hyperparams_.size(); ++i) {
    if (hyperparams_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t HyperparamSpace::position(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UnknownHyperparam("unknown hyperparameter '" + std::string(name) + "'");
}

std::optional<std::uint32_t> HyperparamSpace::level_of(std::size_t hp, std::string_view value) const {
  const auto& values = hyperparams_.at(hp).values;
  value = text::trim(value);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == value) return static_cast<std::uint32_t>(i);
  }
  const auto numeric = text::parse_double(value);
  if (!numeric) return std::nullopt;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto dv = text::parse_double(values[i]);
    if (dv && *dv == *numeric) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

ConfigIndex HyperparamSpace::index_of(const Config& config) const {
  if (config.levels.size() != hyperparams_.size()) throw DomainError("config has wrong number of values");
  ConfigIndex index = 0;
  for (std::size_t i = 0; i < hyperparams_.size(); ++i) {
    if (config.levels[i] >= hyperparams_[i].values.size()) {
      throw DomainError("config level out of domain for '" + hyperparams_[i].name + "'");
    }
    index += config.levels[i] * strides_[i];
  }
  return index;
}

Config HyperparamSpace::config_at(ConfigIndex index) const {
  Config c;
  c.levels.resize(hyperparams_.size());
  for (std::size_t i = 0; i < hyperparams_.size(); ++i) c.levels[i] = level_at(index, i);
  return c;
}

Config HyperparamSpace::make_config(const std::vector<std::string>& values) const {
  if (values.size() != hyperparams_.size()) throw DomainError("config has wrong number of values");
  Config c;
  c.levels.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto level = level_of(i, values[i]);
    if (!level) {
      throw DomainError("value '" + values[i] + "' not in domain of '" + hyperparams_[i].name + "'");
    }
    c.levels.push_back(*level);
  }
  return c;
}

std::vector<Config> enumerate_space(const HyperparamSpace& space) {
  std::vector<Config> out;
  out.reserve(static_cast<std::size_t>(space.config_count()));
  Config c;
  c.levels.assign(space.size(), 0);
  for (ConfigIndex i = 0; i < space.config_count(); ++i) {
    out.push_back(c);
    // Odometer increment, last hyperparameter fastest.
    for (std::size_t h = space.size(); h-- > 0;) {
      if (++c.levels[h] < space.domain_size(h)) break;
      c.levels[h] = 0;
    }
  }
  return out;
}

PartialAssignment PartialAssignment::parse(const HyperparamSpace& space,
                                           const std::vector<std::pair<std::string, std::string>>& pins) {
  PartialAssignment out(space);
  for (const auto& [name, value] : pins) {
    const auto hp = space.position(name);
    const auto level = space.level_of(hp, value);
    if (!level) throw DomainError("value '" + value + "' not in domain of '" + name + "'");
    if (out.pinned(hp) && *out.level(hp) != *level) {
      throw DomainError("hyperparameter '" + name + "' pinned to two different values");
    }
    out.pin(hp, *level);
  }
  return out;
}

bool PartialAssignment::empty() const {
  for (const auto& l : levels_) {
    if (l) return false;
  }
  return true;
}

namespace {

std::string value_text(const nlohmann::json& v, const std::string& source) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw ParseError(source + ": domain values must be numbers or strings");
}

}  // namespace

HyperparamSpace parse_space_json(std::string_view text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("hyperparameters") || !doc["hyperparameters"].is_array()) {
    throw ParseError(source + ": expected an object with a \"hyperparameters\" array");
  }
  std::vector<Hyperparam> hps;
  for (const auto& entry : doc["hyperparameters"]) {
    if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string() ||
        !entry.contains("values") || !entry["values"].is_array()) {
      throw ParseError(source + ": each hyperparameter needs a string \"name\" and a \"values\" array");
    }
    Hyperparam hp;
    hp.name = entry["name"].get<std::string>();
    for (const auto& v : entry["values"]) hp.values.push_back(value_text(v, source));
    hps.push_back(std::move(hp));
  }
  return HyperparamSpace(std::move(hps));
}

HyperparamSpace load_space(const std::string& path) { return parse_space_json(text::read_file(path), path); }

std::string space_to_json(const HyperparamSpace& space) {
  nlohmann::ordered_json doc;
  auto& list = doc["hyperparameters"] = nlohmann::ordered_json::array();
  for (const auto& hp : space.hyperparams()) {
    nlohmann::ordered_json entry;
    entry["name"] = hp.name;
    auto& values = entry["values"] = nlohmann::ordered_json::array();
    for (const auto& v : hp.values) {
      // Keep numbers numeric when their text is already canonical JSON.
      auto parsed = nlohmann::ordered_json::parse(v, nullptr, false);
      if (!parsed.is_discarded() && parsed.is_number() && parsed.dump() == v) {
        values.push_back(parsed);
      } else {
        values.push_back(v);
      }
    }
    list.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace hpscape
