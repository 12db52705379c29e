#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace reram {

// Runs fn(i) for every i in [0, count) on up to jobs threads. fn must be
// safe to call concurrently for distinct i. Work is handed out dynamically;
// callers own determinism by writing results into index i's slot.
template <typename F>
void parallel_for(std::uint64_t count, int jobs, F fn) {
  if (jobs < 1) jobs = 1;
  std::uint64_t jl = static_cast<std::uint64_t>(jobs);
  if (jl > count) jl = count ? count : 1;
  if (jl <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::uint64_t chunk = count / (jl * 16);
  if (chunk < 1) chunk = 1;
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jl);
  std::atomic<bool> failed{false};
  for (std::uint64_t t = 0; t < jl; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::uint64_t begin = next.fetch_add(chunk);
        if (begin >= count || failed.load(std::memory_order_relaxed)) return;
        std::uint64_t end = begin + chunk < count ? begin + chunk : count;
        try {
          for (std::uint64_t i = begin; i < end; ++i) fn(i);
        } catch (...) {
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed.load()) throw std::runtime_error("parallel_for: worker threw");
}

// Neumaier compensated sum in index order; the reduction result does not
// depend on how trials were scheduled across threads.
inline double neumaier_sum(const std::vector<double>& xs) {
  double s = 0.0, c = 0.0;
  for (double x : xs) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  return s + c;
}

}  // namespace reram
