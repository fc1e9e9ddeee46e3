#pragma once

// Hot loops behind influence() and greedy_defaults(). Each kernel has an
// OpenMP version and a plain serial reference; tests require them to agree
// exactly and bench/ times one against the other.

#include <cstdint>
#include <span>
#include <vector>

#include "hpscape/space.hpp"

namespace hpscape::kernels {

/// Index arithmetic for an influence scan over one dataset row.
struct InfluenceProblem {
  std::span<const double> accuracy;    // by ConfigIndex, fully populated on the scanned subspace
  std::vector<ConfigIndex> strides;    // per hyperparameter
  std::vector<std::uint32_t> sizes;    // per hyperparameter
  std::size_t a = 0;                   // hyperparameter tuned in between
  std::size_t b = 0;                   // hyperparameter tuned, then re-tuned
  ConfigIndex base = 0;                // contribution of pinned coordinates
  std::vector<std::size_t> free;       // free hyperparameters in space order
  ConfigIndex start_count = 0;         // product of free domain sizes

  /// ConfigIndex of the t-th starting configuration (last free hp fastest).
  [[nodiscard]] ConfigIndex start(ConfigIndex t) const;
};

struct InfluenceCounts {
  std::uint64_t differences = 0;
  std::uint64_t trials = 0;
  friend bool operator==(const InfluenceCounts&, const InfluenceCounts&) = default;
};

/// argmax over the levels of `hp` of accuracy at `config` with hp varied;
/// strict improvement only, so the lowest level wins ties.
[[nodiscard]] std::uint32_t argmax_level(std::span<const double> accuracy, ConfigIndex config,
                                         ConfigIndex stride, std::uint32_t size);

[[nodiscard]] InfluenceCounts influence_serial(const InfluenceProblem& problem);
[[nodiscard]] InfluenceCounts influence_parallel(const InfluenceProblem& problem);

struct CandidateScan {
  double score = 0.0;
  ConfigIndex index = 0;
  bool found = false;
};

/// Expected best if `candidate` joined a prefix whose per-benchmark best is `current`.
[[nodiscard]] double score_with(std::span<const std::span<const double>> rows,
                                std::span<const double> current, ConfigIndex candidate);

/// Highest score_with over eligible candidates; ties go to the lowest index.
[[nodiscard]] CandidateScan best_candidate_serial(std::span<const std::span<const double>> rows,
                                                  std::span<const double> current,
                                                  std::span<const std::uint8_t> eligible);
[[nodiscard]] CandidateScan best_candidate_parallel(std::span<const std::span<const double>> rows,
                                                    std::span<const double> current,
                                                    std::span<const std::uint8_t> eligible);

}  // namespace hpscape::kernels
