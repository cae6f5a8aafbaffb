#include "cns/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cns {

namespace {
int g_threads = 0;
}

int thread_count() {
    if (g_threads > 0) return g_threads;
    int n = 0;
    if (const char* e = std::getenv("CNS_THREADS")) n = std::atoi(e);
    if (n <= 0) n = int(std::max(1u, std::thread::hardware_concurrency()));
    g_threads = n;
    return n;
}

void set_thread_count(int n) { g_threads = n; }

void parallel_for(int n, const std::function<void(int)>& f) {
    int nt = std::min(thread_count(), n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        int lo = int((long long)n * t / nt), hi = int((long long)n * (t + 1) / nt);
        pool.emplace_back([lo, hi, &f] {
            for (int i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace cns
