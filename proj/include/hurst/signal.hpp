#pragma once

#include <bit>
#include <cmath>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hurst/error.hpp"

namespace hurst {

/// Hurst exponent, strictly inside (0, 1).
class Hurst {
 public:
  explicit Hurst(double value) : value_(value) {
    require(std::isfinite(value) && value > 0.0 && value < 1.0,
            "Hurst exponent must lie in (0, 1), got " + std::to_string(value));
  }

  double value() const noexcept { return value_; }

  friend auto operator<=>(const Hurst&, const Hurst&) = default;

 private:
  double value_;
};

/// A finite, real-valued series of at least two samples.
class Signal {
 public:
  explicit Signal(std::vector<double> samples, double sampling_rate = 1.0)
      : samples_(std::move(samples)), sampling_rate_(sampling_rate) {
    require(samples_.size() >= 2, "signal needs at least 2 samples");
    require(std::isfinite(sampling_rate_) && sampling_rate_ > 0.0,
            "sampling rate must be positive");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      require(std::isfinite(samples_[i]), "non-finite sample at index " + std::to_string(i));
    }
  }

  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double sampling_rate() const noexcept { return sampling_rate_; }
  double operator[](std::size_t i) const { return samples_[i]; }

  /// floor(log2 n)
  int log2_size() const noexcept;

  Signal scaled(double k) const {
    std::vector<double> out(samples_);
    for (double& x : out) x *= k;
    return Signal(std::move(out), sampling_rate_);
  }

 private:
  std::vector<double> samples_;
  double sampling_rate_;
};

inline bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

inline int floor_log2(std::size_t n) noexcept {
  return n == 0 ? 0 : static_cast<int>(std::bit_width(n)) - 1;
}

inline int Signal::log2_size() const noexcept { return floor_log2(samples_.size()); }

}  // namespace hurst
