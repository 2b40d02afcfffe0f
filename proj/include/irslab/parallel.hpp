#pragma once

#include <cstddef>
#include <functional>

namespace irslab::parallel {

/// Runs fn(i) for i in [0, n) on a small thread pool. Each index must write
/// only its own output slot; results are then independent of scheduling.
/// threads == 0 picks a machine-dependent default; threads == 1 runs inline.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

/// Process-wide default used when parallel_for is called with threads == 0.
void set_default_threads(int threads);
int default_threads();

}  // namespace irslab::parallel
