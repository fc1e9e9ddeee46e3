// Times the serial reference kernels against their OpenMP versions on a
// landscape the size of the wide-kernel CNN grid.
//
//   bench_kernels [--benchmarks N] [--repeats R]

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <string>

#include "hpscape/defaults.hpp"
#include "hpscape/influence.hpp"
#include "hpscape/parallel.hpp"
#include "hpscape/signal.hpp"
#include "hpscape/synthetic.hpp"

using namespace hpscape;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void report(const std::string& name, double serial, double parallel) {
  std::cout << name << ": serial " << serial * 1e3 << " ms, parallel " << parallel * 1e3 << " ms, speedup "
            << serial / parallel << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t benchmarks = 7;
  int repeats = 3;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--benchmarks")) benchmarks = std::strtoul(argv[i + 1], nullptr, 10);
    if (!std::strcmp(argv[i], "--repeats")) repeats = std::atoi(argv[i + 1]);
  }

  const HyperparamSpace space({{"kernel_size_l1", {"16", "32", "64", "128", "256"}},
                               {"stride_l1", {"4", "8", "16"}},
                               {"filters_l1", {"8", "16", "32", "64", "128", "256"}},
                               {"kernel_size_l2", {"3", "6"}},
                               {"filters_l2", {"8", "16", "32", "64", "128", "256"}},
                               {"kernel_size_l3_5", {"3", "6"}},
                               {"filters_l3_5", {"8", "16", "32", "64", "128", "256"}}});
  RandomLandscapeOptions opts;
  opts.interaction_count = 6;
  opts.interaction_scale = 0.2;
  opts.noise = 0.05;
  opts.resolution = 0.001;
  const auto table = generate(random_landscape(space, benchmarks, 1, opts));
  const auto percentiles = PercentileTable::from_results(table);
  std::cout << space.config_count() << " configs x " << benchmarks << " benchmarks, " << worker_count()
            << " workers\n";

  report("influence matrix",
         best_of(repeats, [&] { (void)influence_matrix(table, {}, {}, {}, Execution::kSerial); }),
         best_of(repeats, [&] { (void)influence_matrix(table, {}, {}, {}, Execution::kParallel); }));
  report("greedy defaults",
         best_of(repeats, [&] { (void)greedy_defaults(percentiles, kDefaultMaxDefaults, Execution::kSerial); }),
         best_of(repeats, [&] { (void)greedy_defaults(percentiles, kDefaultMaxDefaults, Execution::kParallel); }));

  const Signal signal{std::vector<double>(48000 * 20, 0.25), 48000.0};
  const int workers = worker_count();
  double serial = 0.0;
  {
    set_worker_count(1);
    serial = best_of(repeats, [&] { (void)resample(signal, 4); });
  }
  set_worker_count(workers);
  report("resample x4 (1 worker vs all)", serial, best_of(repeats, [&] { (void)resample(signal, 4); }));
  return 0;
}
