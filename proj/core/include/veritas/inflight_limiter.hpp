#pragma once

#include <cstddef>
#include <semaphore>

#include "veritas/error.hpp"

namespace veritas {

// Caps the number of concurrent outbound provider requests. Shared by every
// client that talks to the same backend.
class InflightLimiter {
 public:
  explicit InflightLimiter(std::size_t cap)
      : cap_(cap), slots_(static_cast<std::ptrdiff_t>(cap)) {
    if (cap == 0) throw ValidationError("in-flight cap must be at least 1");
  }

  class Slot {
   public:
    explicit Slot(InflightLimiter* limiter) : limiter_(limiter) {
      if (limiter_) limiter_->slots_.acquire();
    }
    ~Slot() {
      if (limiter_) limiter_->slots_.release();
    }
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;

   private:
    InflightLimiter* limiter_;
  };

  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
  std::counting_semaphore<> slots_;
};

}  // namespace veritas
