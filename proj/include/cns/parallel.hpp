#pragma once

#include <functional>

namespace cns {

// worker cap from CNS_THREADS (default: hardware concurrency)
int thread_count();
void set_thread_count(int n);

// static partition of [0, n); f(i) must not write shared state
void parallel_for(int n, const std::function<void(int)>& f);

}  // namespace cns
