#ifndef KPOS_PARALLEL_HPP
#define KPOS_PARALLEL_HPP

#include <cstdint>
#include <cstdlib>

namespace kpos {

// Execution mode for the data-parallel layers (sampling loops, see-saw
// restarts). Every parallel loop writes into a preallocated slot per index
// and draws randomness from an index-derived seed, so the serial reference
// and the OpenMP path produce bitwise-identical results.
enum class ExecMode { Serial, Parallel };

// KPOS_THREADS=1 forces the serial reference path.
inline ExecMode default_exec_mode() {
  const char* env = std::getenv("KPOS_THREADS");
  if (env && env[0] == '1' && env[1] == '\0') return ExecMode::Serial;
  return ExecMode::Parallel;
}

template <typename F>
void serial_for(std::int64_t count, F&& f) {
  for (std::int64_t i = 0; i < count; ++i) f(i);
}

template <typename F>
void parallel_for(std::int64_t count, F&& f, ExecMode mode = default_exec_mode()) {
  if (mode == ExecMode::Serial) {
    serial_for(count, f);
    return;
  }
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) f(i);
#else
  serial_for(count, f);
#endif
}

}  // namespace kpos

#endif
