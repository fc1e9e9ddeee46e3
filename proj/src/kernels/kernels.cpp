#include "hpscape/kernels.hpp"

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hpscape/parallel.hpp"

namespace hpscape {

namespace {
int g_jobs = 0;
}

void set_worker_count(int jobs) {
#ifdef _OPENMP
  static const int initial = omp_get_max_threads();
  omp_set_num_threads(jobs > 0 ? jobs : initial);
#endif
  g_jobs = jobs > 0 ? jobs : 0;
}

int worker_count() {
#ifdef _OPENMP
  return g_jobs > 0 ? g_jobs : omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace hpscape

namespace hpscape::kernels {

ConfigIndex InfluenceProblem::start(ConfigIndex t) const {
  ConfigIndex index = base;
  for (std::size_t k = free.size(); k-- > 0;) {
    const auto h = free[k];
    index += (t % sizes[h]) * strides[h];
    t /= sizes[h];
  }
  return index;
}

std::uint32_t argmax_level(std::span<const double> accuracy, ConfigIndex config, ConfigIndex stride,
                           std::uint32_t size) {
  const auto level = (config / stride) % size;
  const ConfigIndex origin = config - level * stride;
  std::uint32_t best = 0;
  double best_acc = accuracy[origin];
  for (std::uint32_t v = 1; v < size; ++v) {
    const double acc = accuracy[origin + v * stride];
    if (acc > best_acc) {
      best_acc = acc;
      best = v;
    }
  }
  return best;
}

namespace {

// One trial of the influence procedure from starting config `c`.
inline bool retune_differs(const InfluenceProblem& p, ConfigIndex c) {
  const auto sa = p.strides[p.a];
  const auto sb = p.strides[p.b];
  const auto na = p.sizes[p.a];
  const auto nb = p.sizes[p.b];
  const auto b_tuned = argmax_level(p.accuracy, c, sb, nb);
  const auto a_level = (c / sa) % na;
  const auto a_tuned = argmax_level(p.accuracy, c, sa, na);
  const ConfigIndex moved = c - a_level * sa + a_tuned * sa;
  const auto b_retuned = argmax_level(p.accuracy, moved, sb, nb);
  return b_tuned != b_retuned;
}

}  // namespace

InfluenceCounts influence_serial(const InfluenceProblem& p) {
  InfluenceCounts counts;
  for (ConfigIndex t = 0; t < p.start_count; ++t) {
    counts.differences += retune_differs(p, p.start(t)) ? 1 : 0;
    ++counts.trials;
  }
  return counts;
}

InfluenceCounts influence_parallel(const InfluenceProblem& p) {
  std::uint64_t differences = 0;
  const auto n = static_cast<std::int64_t>(p.start_count);
#pragma omp parallel for reduction(+ : differences) schedule(static)
  for (std::int64_t t = 0; t < n; ++t) {
    differences += retune_differs(p, p.start(static_cast<ConfigIndex>(t))) ? 1 : 0;
  }
  return {differences, p.start_count};
}

double score_with(std::span<const std::span<const double>> rows, std::span<const double> current,
                  ConfigIndex candidate) {
  double sum = 0.0;
  for (std::size_t b = 0; b < rows.size(); ++b) {
    const double v = rows[b][candidate];
    sum += v > current[b] ? v : current[b];
  }
  return sum / static_cast<double>(rows.size());
}

CandidateScan best_candidate_serial(std::span<const std::span<const double>> rows, std::span<const double> current,
                                    std::span<const std::uint8_t> eligible) {
  CandidateScan best;
  for (ConfigIndex c = 0; c < eligible.size(); ++c) {
    if (!eligible[c]) continue;
    const double s = score_with(rows, current, c);
    if (!best.found || s > best.score) best = {s, c, true};
  }
  return best;
}

CandidateScan best_candidate_parallel(std::span<const std::span<const double>> rows, std::span<const double> current,
                                      std::span<const std::uint8_t> eligible) {
  CandidateScan best;
  const auto n = static_cast<std::int64_t>(eligible.size());
#pragma omp parallel
  {
    CandidateScan local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      const auto c = static_cast<ConfigIndex>(i);
      if (!eligible[c]) continue;
      const double s = score_with(rows, current, c);
      if (!local.found || s > local.score) local = {s, c, true};
    }
#pragma omp critical(hpscape_best_candidate)
    {
      // Highest score, then lowest index: the merge order cannot matter.
      if (local.found &&
          (!best.found || local.score > best.score || (local.score == best.score && local.index < best.index))) {
        best = local;
      }
    }
  }
  return best;
}

}  // namespace hpscape::kernels
