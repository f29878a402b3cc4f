#pragma once

// Deterministic parallel map over an index range: results land in a
// pre-sized vector at their own index, so the output is identical at any
// thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace torlab {

template <typename F>
void parallel_for(std::size_t count, int jobs, F&& body) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  if (jobs == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  const std::size_t nw = std::min<std::size_t>(jobs, count);
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < nw; ++w) {
    workers.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace torlab
