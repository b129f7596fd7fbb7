#pragma once

#include <cstddef>
#include <functional>

namespace harmext {

// Worker count: hardware concurrency capped by the HC_THREADS environment
// variable (read once).
int worker_count();

// Index-parallel loop with deterministic output: the body writes only to
// slot i. Runs inline when the range is small or one worker is configured.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace harmext
