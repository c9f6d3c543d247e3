// SPDX-License-Identifier: Apache-2.0

#include "dbcd/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace dbcd {

const char* stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::target_accuracy:
      return "target_accuracy";
    case StopReason::stagnation:
      return "stagnation";
    case StopReason::iteration_budget:
      return "budget";
  }
  return "unknown";
}

StopDecision stop_check(ProblemKind kind, double metric, double objective,
                        std::optional<double> previous_objective, double epsilon) {
  if (kind == ProblemKind::svm_dual) {
    if (metric <= epsilon) return {true, StopReason::target_accuracy};
    return {};
  }
  if (std::isfinite(metric)) {
    // gap against a known optimum
    if (metric <= epsilon) return {true, StopReason::target_accuracy};
    return {};
  }
  if (previous_objective &&
      std::abs(*previous_objective - objective) <=
          epsilon * std::max(1.0, std::abs(objective)))
    return {true, StopReason::stagnation};
  return {};
}

namespace detail {

void parallel_for(int workers, std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const int spawn = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(workers), count));
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int w = 0; w < spawn; ++w) {
    pool.emplace_back([&]() {
      try {
        for (std::size_t i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1))
          fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

}  // namespace dbcd
