#pragma once

#include <cstddef>
#include <functional>

namespace circmap {

/// Worker count: hardware concurrency capped by CIRCMAP_THREADS.
unsigned thread_count();

/// Runs body(i) for i in [0, n) across thread_count() workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace circmap
