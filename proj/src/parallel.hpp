#pragma once

#include <thread>
#include <vector>

namespace apfree::detail {

// Runs fn(worker) for worker in [0, jobs). jobs <= 1 runs inline.
template <typename Fn>
void run_workers(int jobs, Fn&& fn) {
  if (jobs <= 1) {
    fn(0);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w) pool.emplace_back([&fn, w] { fn(w); });
}

}  // namespace apfree::detail
