#include "wfl/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef WFL_HAVE_OPENMP
#include <omp.h>
#endif

namespace wfl {

int default_thread_count() {
  if (const char* env = std::getenv("WFL_NUM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
#ifdef WFL_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_thread_count(int threads) {
#ifdef WFL_HAVE_OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int current_thread_count() {
#ifdef WFL_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace wfl
