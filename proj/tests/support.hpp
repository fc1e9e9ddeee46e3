#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hpscape/results_table.hpp"
#include "hpscape/space.hpp"
#include "oracles/oracles.hpp"

namespace testing {

/// Space with hyperparameters h0, h1, ... whose domains are 0..size-1.
inline hpscape::HyperparamSpace numbered_space(const std::vector<int>& sizes) {
  std::vector<hpscape::Hyperparam> hps;
  for (std::size_t h = 0; h < sizes.size(); ++h) {
    hpscape::Hyperparam hp{"h" + std::to_string(h), {}};
    for (int v = 0; v < sizes[h]; ++v) hp.values.push_back(std::to_string(v));
    hps.push_back(hp);
  }
  return hpscape::HyperparamSpace(hps);
}

/// Copies one dataset of a table into the oracle's tuple map.
inline oracle::Landscape to_landscape(const hpscape::ResultsTable& table, std::size_t dataset) {
  oracle::Landscape L;
  const auto& space = table.space();
  for (std::size_t h = 0; h < space.size(); ++h) L.sizes.push_back(static_cast<int>(space.domain_size(h)));
  for (const auto& t : oracle::all_tuples(L.sizes)) {
    hpscape::Config c;
    for (int v : t) c.levels.push_back(static_cast<std::uint32_t>(v));
    L.acc[t] = *table.accuracy(space.index_of(c), dataset);
  }
  return L;
}

inline std::vector<std::vector<double>> rows_of(const hpscape::ResultsTable& table) {
  std::vector<std::vector<double>> rows;
  for (std::size_t d = 0; d < table.dataset_count(); ++d) {
    const auto r = table.row(d);
    rows.emplace_back(r.begin(), r.end());
  }
  return rows;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("hpscape_" + tag + "_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
