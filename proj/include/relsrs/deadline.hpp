#pragma once

#include <chrono>
#include <optional>

namespace relsrs {

  // Cooperative wall-clock limit; a default-constructed deadline never expires.
  class Deadline {
   public:
    using clock = std::chrono::steady_clock;

    Deadline() = default;
    explicit Deadline(std::chrono::duration<double> budget)
        : at_(clock::now() + std::chrono::duration_cast<clock::duration>(budget)) {}

    bool expired() const {
      return at_ && clock::now() >= *at_;
    }

   private:
    std::optional<clock::time_point> at_;
  };

}  // namespace relsrs
