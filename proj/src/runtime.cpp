#include "collapsar/runtime.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace collapsar {

int runtime_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  const char* env = std::getenv("COLLAPSAR_THREADS");
  if (!env) return std::min(hw, 4);
  int n = std::atoi(env);
  if (n < 1) n = 1;
  return std::min(n, hw);
}

void parallel_chunks(int n, const std::function<void(int, int)>& fn) {
  int threads = std::min(runtime_threads(), std::max(1, n));
  if (threads <= 1 || n <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    int lo = t * chunk;
    int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace collapsar
