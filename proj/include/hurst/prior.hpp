#pragma once

#include <cmath>
#include <cstddef>

#include "hurst/error.hpp"
#include "hurst/posterior.hpp"

namespace hurst {

/// Beta prior with the given mean whose effective sample size alpha+beta is `ess`.
inline BetaPrior elicit_beta(double mean, double ess) {
  require(std::isfinite(mean) && mean > 0.0 && mean < 1.0, "prior mean must lie in (0, 1)");
  require(std::isfinite(ess) && ess > 0.0, "effective sample size must be positive");
  const double alpha = mean * ess;
  return BetaPrior(alpha, ess - alpha);
}

/// Half the signal length.
inline double default_ess(std::size_t n) {
  require(n >= 2, "signal length must be at least 2");
  return static_cast<double>(n) / 2.0;
}

}  // namespace hurst
