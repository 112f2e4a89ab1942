#pragma once

namespace wfl {

/// Thread count from WFL_NUM_THREADS, or the OpenMP default when unset or invalid.
int default_thread_count();

/// Sets the OpenMP team size for subsequent parallel regions; no-op without OpenMP.
void set_thread_count(int threads);

/// Threads the next parallel region will use (1 without OpenMP).
int current_thread_count();

}  // namespace wfl
