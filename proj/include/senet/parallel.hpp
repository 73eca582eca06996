#pragma once

#include <cstddef>
#include <functional>

namespace senet {

// Thread budget for work-unit parallelism: the SENET_THREADS environment
// variable if set, otherwise the OpenMP default (1 without OpenMP).
int thread_budget();

// Run f(i) for i in [0, n).  Work units must be independent and should own a
// derived RNG substream so results do not depend on the schedule; a budget of
// 1 is the serial reference path.  The first exception thrown by any unit is
// rethrown after the loop completes.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f,
                  int threads = 0);

}  // namespace senet
