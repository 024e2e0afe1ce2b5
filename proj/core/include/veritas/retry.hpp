#pragma once

#include <chrono>
#include <thread>
#include <utility>

#include "veritas/error.hpp"

namespace veritas {

// Bounded exponential backoff applied to TransportError only; any other
// error propagates on the first attempt.
struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
  double multiplier = 2.0;
};

template <typename Fn>
auto with_retries(const RetryPolicy& policy, Fn&& fn) -> decltype(fn()) {
  auto delay = policy.initial_backoff;
  const int attempts = policy.max_attempts < 1 ? 1 : policy.max_attempts;
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const TransportError&) {
      if (attempt >= attempts) throw;
    }
    std::this_thread::sleep_for(delay);
    delay = std::chrono::milliseconds(
        static_cast<std::chrono::milliseconds::rep>(delay.count() * policy.multiplier));
  }
}

}  // namespace veritas
