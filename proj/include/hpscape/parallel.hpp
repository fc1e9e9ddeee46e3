#pragma once

namespace hpscape {

/// Selects between the OpenMP kernels and their serial reference versions.
/// Both produce bit-identical results; the serial path exists for testing.
enum class Execution { kParallel, kSerial };

/// Bounds worker threads for the parallel kernels (<= 0 restores the default).
void set_worker_count(int jobs);
[[nodiscard]] int worker_count();

}  // namespace hpscape
