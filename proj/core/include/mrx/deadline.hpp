#pragma once

#include <chrono>
#include <optional>
#include <stop_token>

#include "mrx/errors.hpp"

namespace mrx {

class Timeout : public Error {
 public:
  Timeout() : Error("time limit reached") {}
};

/// Wall-clock limit plus an optional external cancellation token. Long-running
/// loops call check() between iterations; the SAT backend polls it too.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;

  static Deadline never() { return Deadline{}; }

  static Deadline after(std::chrono::duration<double> limit) {
    Deadline d;
    d.until_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(limit);
    return d;
  }

  Deadline& with_stop_token(std::stop_token token) {
    token_ = std::move(token);
    return *this;
  }

  bool expired() const {
    if (token_.stop_requested()) return true;
    return until_ && Clock::now() >= *until_;
  }

  void check() const {
    if (expired()) throw Timeout{};
  }

 private:
  std::optional<Clock::time_point> until_;
  std::stop_token token_;
};

}  // namespace mrx
