#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gnlab::cli {

/// Applies f to every item on at most `jobs` threads; results keep input order.
/// The first exception thrown by f is rethrown after all workers stop.
template <class T, class F>
auto ordered_map(const std::vector<T>& items, int jobs, F f) {
  using R = decltype(f(items.front()));
  std::vector<R> results(items.size());
  const std::size_t workers =
      std::min<std::size_t>(items.size(), static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) results[i] = f(items[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        results[i] = f(items[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = items.size();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace gnlab::cli
