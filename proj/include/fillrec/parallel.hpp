#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fillrec {

/// Worker count: FILLINGS_THREADS if set and positive, else the hardware count.
inline int thread_count() {
  if (const char* env = std::getenv("FILLINGS_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/// Calls f(i) for i in [0, n). Each index is written by exactly one worker,
/// so callers that store into slot i need no locking.
template <class F>
void parallel_for(std::size_t n, F&& f, std::size_t min_per_thread = 16) {
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n / std::max<std::size_t>(min_per_thread, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto body = [&] {
    try {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    } catch (...) {
      std::lock_guard<std::mutex> lk(err_mu);
      if (!err) err = std::current_exception();
      next = n;
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace fillrec
