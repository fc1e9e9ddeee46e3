#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hpscape {

/// Position of a configuration in the lexicographic enumeration of a space
/// (last hyperparameter varies fastest).
using ConfigIndex = std::uint64_t;

/// A point in a space, stored as one domain index ("level") per hyperparameter.
/// Levels are positionally aligned with HyperparamSpace::hyperparams().
struct Config {
  std::vector<std::uint32_t> levels;

  friend bool operator==(const Config&, const Config&) = default;
  friend auto operator<=>(const Config&, const Config&) = default;
};

struct Hyperparam {
  std::string name;
  /// Ordered value domain. Values are kept as their textual form; the order
  /// here is the tie-break order used by every downstream analysis.
  std::vector<std::string> values;

  friend bool operator==(const Hyperparam&, const Hyperparam&) = default;
};

/// Ordered hyperparameters with finite ordered domains.
///
/// Construction validates that names are unique and that every domain is
/// non-empty and duplicate-free; a constructed space is always valid.
class HyperparamSpace {
 public:
  /// Upper bound on the number of configurations a space may describe.
  static constexpr ConfigIndex kMaxConfigs = ConfigIndex{1} << 31;

  HyperparamSpace() = default;
  explicit HyperparamSpace(std::vector<Hyperparam> hyperparams);

  [[nodiscard]] const std::vector<Hyperparam>& hyperparams() const { return hyperparams_; }
  [[nodiscard]] std::size_t size() const { return hyperparams_.size(); }
  [[nodiscard]] const Hyperparam& operator[](std::size_t i) const { return hyperparams_[i]; }

  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UnknownHyperparam.
  [[nodiscard]] std::size_t position(std::string_view name) const;

  /// Domain index of `value` for hyperparameter `hp`. Exact text match first,
  /// then numeric equality (so "16.0" matches a domain value "16").
  [[nodiscard]] std::optional<std::uint32_t> level_of(std::size_t hp, std::string_view value) const;

  [[nodiscard]] std::size_t domain_size(std::size_t hp) const { return hyperparams_[hp].values.size(); }
  [[nodiscard]] ConfigIndex config_count() const { return count_; }
  /// Index distance between configs that differ by one level of `hp`.
  [[nodiscard]] ConfigIndex stride(std::size_t hp) const { return strides_[hp]; }

  [[nodiscard]] ConfigIndex index_of(const Config& config) const;
  [[nodiscard]] Config config_at(ConfigIndex index) const;
  [[nodiscard]] std::uint32_t level_at(ConfigIndex index, std::size_t hp) const {
    return static_cast<std::uint32_t>((index / strides_[hp]) % hyperparams_[hp].values.size());
  }
  [[nodiscard]] const std::string& value(const Config& config, std::size_t hp) const {
    return hyperparams_[hp].values[config.levels[hp]];
  }

  /// Builds a config from one textual value per hyperparameter. Throws DomainError.
  [[nodiscard]] Config make_config(const std::vector<std::string>& values) const;

  friend bool operator==(const HyperparamSpace& a, const HyperparamSpace& b) {
    return a.hyperparams_ == b.hyperparams_;
  }

 private:
  std::vector<Hyperparam> hyperparams_;
  std::vector<ConfigIndex> strides_;
  ConfigIndex count_ = 1;
};

/// Cartesian product of all domains in lexicographic order of domain indices;
/// element i has ConfigIndex i.
[[nodiscard]] std::vector<Config> enumerate_space(const HyperparamSpace& space);

/// Pins selected hyperparameters to fixed levels; unset entries are free.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(const HyperparamSpace& space) : levels_(space.size()) {}

  /// Resolves name=value pairs against `space`. Throws UnknownHyperparam / DomainError.
  static PartialAssignment parse(const HyperparamSpace& space,
                                 const std::vector<std::pair<std::string, std::string>>& pins);

  void pin(std::size_t hp, std::uint32_t level) { levels_.at(hp) = level; }
  [[nodiscard]] bool pinned(std::size_t hp) const { return hp < levels_.size() && levels_[hp].has_value(); }
  [[nodiscard]] std::optional<std::uint32_t> level(std::size_t hp) const {
    return hp < levels_.size() ? levels_[hp] : std::nullopt;
  }
  [[nodiscard]] bool empty() const;

 private:
  std::vector<std::optional<std::uint32_t>> levels_;
};

// Space files: {"hyperparameters": [{"name": ..., "values": [...]}, ...]}
[[nodiscard]] HyperparamSpace parse_space_json(std::string_view text, const std::string& source = "<space>");
[[nodiscard]] HyperparamSpace load_space(const std::string& path);
[[nodiscard]] std::string space_to_json(const HyperparamSpace& space);

}  // namespace hpscape
