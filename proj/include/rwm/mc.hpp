#pragma once

// Deterministic replicate fan-out. Replicate i always receives
// derive_seed(master, i) and its result lands at index i, so outputs do not
// depend on the number of workers or on completion order.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "rwm/errors.hpp"
#include "rwm/rng.hpp"

namespace rwm::mc {

struct SeedPlan {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_count = 1;

  std::uint64_t seed(std::uint64_t index) const { return derive_seed(master_seed, index); }
  // A child plan for a sub-experiment, keyed by `tag`.
  SeedPlan child(std::uint64_t tag, std::uint64_t count) const {
    return {derive_seed(splitmix64_mix(master_seed + 0x5DEECE66DULL), tag), count};
  }
};

struct ReplicateError {
  std::size_t index;
  std::string message;
};

template <class R>
struct ReplicateBatch {
  std::vector<std::optional<R>> results;  // index order; empty where the task threw
  std::vector<ReplicateError> errors;     // sorted by index

  bool ok() const { return errors.empty(); }

  std::vector<R> successes() const {
    std::vector<R> out;
    out.reserve(results.size());
    for (const auto& r : results) {
      if (r) out.push_back(*r);
    }
    return out;
  }
};

// 0 means "use the hardware concurrency".
inline unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

// task(index, seed) -> R. Exceptions are recorded per index and the run
// continues.
template <class Task>
auto run_replicates(Task&& task, std::size_t count, const SeedPlan& plan, unsigned workers)
    -> ReplicateBatch<std::invoke_result_t<Task&, std::size_t, std::uint64_t>> {
  using R = std::invoke_result_t<Task&, std::size_t, std::uint64_t>;
  if (count > plan.stream_count) {
    throw ConfigError("run_replicates: count exceeds the seed plan's stream_count");
  }

  ReplicateBatch<R> batch;
  batch.results.resize(count);
  if (count == 0) return batch;

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        batch.results[i].emplace(task(i, plan.seed(i)));
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        batch.errors.push_back({i, e.what()});
      } catch (...) {
        std::lock_guard lock(error_mutex);
        batch.errors.push_back({i, "unknown exception"});
      }
    }
  };

  const auto n = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), count));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
  }
  std::sort(batch.errors.begin(), batch.errors.end(),
            [](const ReplicateError& a, const ReplicateError& b) { return a.index < b.index; });
  return batch;
}

}  // namespace rwm::mc
