#include "senet/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace senet {

int thread_budget() {
  if (const char* env = std::getenv("SENET_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f,
                  int threads) {
  const int budget = threads > 0 ? threads : thread_budget();
  std::exception_ptr first_error = nullptr;

#ifdef _OPENMP
  if (budget > 1 && n > 1) {
    std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic) num_threads(budget)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
    return;
  }
#endif
  (void)budget;
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace senet
