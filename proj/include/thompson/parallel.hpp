#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace thompson {

// Raised when an exact enumeration would exceed its memory budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t reachable, std::size_t last_completed)
      : std::runtime_error(what), reachable_(reachable), last_completed_(last_completed) {}

  // Size of the set that overflowed the budget.
  std::size_t reachable() const noexcept { return reachable_; }
  // Last radius / step finished before the budget ran out.
  std::size_t last_completed() const noexcept { return last_completed_; }

 private:
  std::size_t reachable_;
  std::size_t last_completed_;
};

// Approximate accounting for hash-keyed element stores.
struct MemoryBudget {
  std::size_t bytes = std::size_t{4} << 30;

  static constexpr std::size_t kEntryOverhead = 96;

  static MemoryBudget megabytes(std::size_t mb) { return {mb << 20}; }
  bool allows(std::size_t entries, std::size_t key_bytes) const {
    return entries * kEntryOverhead + key_bytes <= bytes;
  }
};

// Runs fn(unit) for unit in [0, units) on `threads` workers. Units are
// claimed dynamically; callers write results into per-unit slots so the
// outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t units, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || units <= 1) {
    for (std::size_t u = 0; u < units; ++u) fn(u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t u = next.fetch_add(1);
      if (u >= units) return;
      try {
        fn(u);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = units;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, units));
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace thompson
