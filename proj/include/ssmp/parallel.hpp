#pragma once

#include <cstddef>
#include <functional>

namespace ssmp {

// Worker count: hardware concurrency, capped by SPECTRAL_SSMP_THREADS.
unsigned worker_count();

// Calls body(i) for i in [0, n) on up to worker_count() threads. Work is
// handed out by index, so per-index results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace ssmp
