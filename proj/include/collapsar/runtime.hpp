#pragma once

#include <functional>

namespace collapsar {

// COLLAPSAR_THREADS caps internal parallelism; clamped to [1, hardware].
int runtime_threads();

// Splits [0, n) into per-thread chunks; fn(begin, end) runs on worker threads.
// Falls back to a single inline call when one thread is configured.
void parallel_chunks(int n, const std::function<void(int, int)>& fn);

}  // namespace collapsar
