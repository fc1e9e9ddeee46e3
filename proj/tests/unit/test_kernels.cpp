#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hpscape/defaults.hpp"
#include "hpscape/influence.hpp"
#include "hpscape/kernels.hpp"
#include "hpscape/parallel.hpp"
#include "hpscape/signal.hpp"
#include "hpscape/synthetic.hpp"
#include "support.hpp"

using namespace hpscape;

namespace {

ResultsTable sample_table(std::uint64_t seed, std::size_t benchmarks) {
  RandomLandscapeOptions opts;
  opts.interaction_count = 4;
  opts.interaction_scale = 0.3;
  opts.noise = 0.1;
  opts.resolution = 0.01;
  return generate(random_landscape(testing::numbered_space({5, 3, 4, 2, 4}), benchmarks, seed, opts));
}

}  // namespace

TEST_CASE("parallel influence equals the serial reference at every worker count") {
  const auto t = sample_table(1, 2);
  const auto serial = influence_matrix(t, {}, {}, {}, Execution::kSerial);
  for (int jobs : {1, 2, 3, 8}) {
    CAPTURE(jobs);
    set_worker_count(jobs);
    const auto parallel = influence_matrix(t, {}, {}, {}, Execution::kParallel);
    CHECK(parallel.per_dataset == serial.per_dataset);
  }
  set_worker_count(0);
}

TEST_CASE("parallel candidate scan equals the serial reference, ties included") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto p = PercentileTable::from_results(sample_table(seed, 3));
    const auto serial = greedy_defaults(p, kDefaultMaxDefaults, Execution::kSerial);
    for (int jobs : {1, 2, 5, 8}) {
      set_worker_count(jobs);
      const auto parallel = greedy_defaults(p, kDefaultMaxDefaults, Execution::kParallel);
      CHECK(parallel.configs == serial.configs);
      CHECK(parallel.trajectory == serial.trajectory);
    }
  }
  set_worker_count(0);

  // Every candidate ties; the lowest index must win regardless of threads.
  const std::vector<double> flat(64, 0.5);
  const std::vector<std::span<const double>> rows{flat};
  const std::vector<double> current{0.0};
  std::vector<std::uint8_t> eligible(64, 1);
  eligible[0] = 0;
  for (int jobs : {1, 4, 7}) {
    set_worker_count(jobs);
    const auto scan = kernels::best_candidate_parallel(rows, current, eligible);
    CHECK(scan.found);
    CHECK(scan.index == 1);
    CHECK(scan.score == 0.5);
  }
  set_worker_count(0);
  const std::vector<std::uint8_t> none(64, 0);
  CHECK_FALSE(kernels::best_candidate_serial(rows, current, none).found);
  CHECK_FALSE(kernels::best_candidate_parallel(rows, current, none).found);
}

TEST_CASE("resample is independent of the worker count") {
  const Signal s{oracle::tone(700.0, 48000.0, 9000), 48000.0};
  set_worker_count(1);
  const auto one = resample(s, 3);
  set_worker_count(6);
  const auto six = resample(s, 3);
  set_worker_count(0);
  CHECK(one.samples == six.samples);
}
