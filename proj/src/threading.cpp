#include "snls/threading.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace snls {

namespace {
int g_threads = 0;
}

void configure_threads_from_env() {
  if (g_threads > 0) return;
  int threads = 1;
  if (const char* env = std::getenv("SNLS_THREADS")) {
    try {
      threads = std::max(1, std::stoi(env));
    } catch (...) {
      threads = 1;
    }
  }
  g_threads = threads;
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
}

int configured_threads() {
  if (g_threads == 0) configure_threads_from_env();
  return g_threads;
}

}  // namespace snls
