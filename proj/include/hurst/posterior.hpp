#pragma once

// Bayesian model on NDWT level energies.
//
// Under the independence model, each level energy y_j is a scaled chi-square
// with b = 2^(mJ) degrees of freedom and mean sigma^2 2^-(2H+m)j. The prior is
// beta(alpha, beta) on H times the improper 1/sigma^2. Maximizing over sigma^2
// in closed form leaves a one-dimensional profile posterior in H whose mode is
// the estimator.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hurst/error.hpp"
#include "hurst/ndwt.hpp"
#include "hurst/signal.hpp"

namespace hurst {

class BetaPrior {
 public:
  BetaPrior(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    require(std::isfinite(alpha) && alpha > 0.0, "beta prior alpha must be positive");
    require(std::isfinite(beta) && beta > 0.0, "beta prior beta must be positive");
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double mean() const noexcept { return alpha_ / (alpha_ + beta_); }
  double ess() const noexcept { return alpha_ + beta_; }

  /// ln Gamma(a+b) - ln Gamma(a) - ln Gamma(b)
  double log_normalizer() const noexcept {
    return std::lgamma(alpha_ + beta_) - std::lgamma(alpha_) - std::lgamma(beta_);
  }

  double log_density(Hurst h) const noexcept {
    const double x = h.value();
    return log_normalizer() + (alpha_ - 1.0) * std::log(x) + (beta_ - 1.0) * std::log1p(-x);
  }

  friend bool operator==(const BetaPrior&, const BetaPrior&) = default;

 private:
  double alpha_;
  double beta_;
};

struct SolverConfig {
  double coarse_step = 1e-4;
  double refine_tolerance = 1e-7;
  double h_min = 1e-7;
  double h_max = 1.0 - 1e-7;

  void validate() const {
    require(coarse_step > 0.0 && refine_tolerance > 0.0, "solver steps must be positive");
    require(refine_tolerance <= coarse_step, "refine_tolerance must not exceed coarse_step");
    require(h_min > 0.0 && h_min < h_max && h_max < 1.0, "solver needs 0 < h_min < h_max < 1");
  }
};

enum class Method { bayes_map, regression };

inline std::string to_string(Method m) { return m == Method::bayes_map ? "bayes-map" : "regression"; }

struct Diagnostics {
  int root_brackets = 0;
  bool boundary_hit = false;
};

struct EstimateResult {
  Hurst h_hat{0.5};
  double sigma2_hat = 0.0;
  std::optional<double> log_posterior_at_mode;  // Bayes only
  Method method = Method::bayes_map;
  std::pair<int, int> levels_used{0, 0};
  Diagnostics diagnostics;
};

/// ln g(y) for the averaged squared coefficients at level j; log domain throughout.
inline double energy_log_density(double y, int j, Hurst hurst, double sigma2, int m, int J) {
  require(std::isfinite(y) && y > 0.0, "energy_log_density: y must be positive");
  require(std::isfinite(sigma2) && sigma2 > 0.0, "energy_log_density: sigma2 must be positive");
  require(m >= 1 && J >= 1, "energy_log_density: m and J must be positive");
  const double half_b = std::ldexp(1.0, m * J - 1);
  const double rate_exp = (2.0 * hurst.value() + m) * j;  // log2 of 2^((2H+m)j)
  const double log_rate = (rate_exp + m * J) * std::numbers::ln2 - std::log(2.0 * sigma2);
  return -std::lgamma(half_b) + half_b * log_rate + (half_b - 1.0) * std::log(y) -
         std::exp(log_rate + std::log(y));
}

inline double log_likelihood(Hurst hurst, double sigma2, const LevelEnergies& energies) {
  double total = 0.0;
  for (const auto& [j, y] : energies.entries()) {
    total += energy_log_density(y, j, hurst, sigma2, energies.m(), energies.J());
  }
  return total;
}

namespace detail {

inline void require_positive_energies(const LevelEnergies& energies) {
  for (const auto& [j, y] : energies.entries()) {
    if (!(y > 0.0)) {
      fail(ErrorKind::degenerate_input, "level " + std::to_string(j) + " has zero energy");
    }
  }
}

// Weighted sums with 2^((2H+m) j2) factored out:
//   s0 = sum y_j 2^((2H+m)(j-j2)),  s1 = sum j y_j 2^((2H+m)(j-j2)).
struct ScaledSums {
  double s0 = 0.0;
  double s1 = 0.0;
  double log2_factor = 0.0;  // (2H+m) j2
};

inline ScaledSums scaled_sums(double h, const LevelEnergies& energies) {
  const double slope = 2.0 * h + energies.m();
  const int top = energies.j2();
  ScaledSums out;
  for (const auto& [j, y] : energies.entries()) {
    const double w = y * std::exp2(slope * (j - top));
    out.s0 += w;
    out.s1 += w * j;
  }
  out.log2_factor = slope * top;
  return out;
}

}  // namespace detail

/// sigma^2 maximizing ln F at fixed H: b sum_j y_j 2^((2H+m)j) / (bc + 2).
inline double profile_sigma2(Hurst hurst, const LevelEnergies& energies) {
  detail::require_positive_energies(energies);
  const double b = energies.b();
  const auto sums = detail::scaled_sums(hurst.value(), energies);
  return b * sums.s0 * std::exp2(sums.log2_factor) / (b * energies.c() + 2.0);
}

/// ln F(H, profile sigma^2(H)), constants included.
inline double log_posterior_profile(Hurst hurst, const LevelEnergies& energies,
                                    const BetaPrior& prior) {
  detail::require_positive_energies(energies);
  const double h = hurst.value();
  const double b = energies.b();
  const double c = energies.c();
  const double m = energies.m();
  const double bc2 = b * c + 2.0;

  const auto sums = detail::scaled_sums(h, energies);
  const double log_sigma2 =
      std::log(b) + std::log(sums.s0) + sums.log2_factor * std::numbers::ln2 - std::log(bc2);

  double level_terms = 0.0;
  for (const auto& [j, y] : energies.entries()) {
    level_terms += 0.5 * (2.0 * h + m) * j * b * std::numbers::ln2 + 0.5 * (b - 2.0) * std::log(y);
  }

  return -0.5 * bc2 * log_sigma2 + level_terms - 0.5 * bc2 + prior.log_normalizer() +
         (prior.alpha() - 1.0) * std::log(h) + (prior.beta() - 1.0) * std::log1p(-h) -
         c * std::lgamma(0.5 * b) + 0.5 * b * c * std::log(0.5 * b);
}

/// d/dH of the profile log-posterior.
inline double posterior_h_derivative(Hurst hurst, const LevelEnergies& energies,
                                     const BetaPrior& prior) {
  detail::require_positive_energies(energies);
  const double h = hurst.value();
  const double b = energies.b();
  const double bc2 = b * energies.c() + 2.0;
  double level_sum = 0.0;
  for (const auto& entry : energies.entries()) level_sum += entry.first;

  const auto sums = detail::scaled_sums(h, energies);
  return -bc2 * std::numbers::ln2 * (sums.s1 / sums.s0) + b * std::numbers::ln2 * level_sum +
         (prior.alpha() - 1.0) / h - (prior.beta() - 1.0) / (1.0 - h);
}

/// MAP estimate of H: coarse scan of the derivative for sign changes,
/// bisection within each bracket, then the best of roots and endpoints.
inline EstimateResult map_estimate(const LevelEnergies& energies, const BetaPrior& prior,
                                   const SolverConfig& config = {}) {
  config.validate();
  if (energies.c() < 2) {
    fail(ErrorKind::insufficient_levels,
         "MAP estimation needs at least two levels (single-level posterior has no interior mode)");
  }
  detail::require_positive_energies(energies);

  auto derivative = [&](double h) { return posterior_h_derivative(Hurst(h), energies, prior); };

  std::vector<double> candidates{config.h_min, config.h_max};
  int brackets = 0;

  const auto steps =
      static_cast<long>(std::ceil((config.h_max - config.h_min) / config.coarse_step));
  double h_prev = config.h_min;
  double d_prev = derivative(h_prev);
  for (long i = 1; i <= steps; ++i) {
    const double h_next = (i == steps) ? config.h_max : config.h_min + i * config.coarse_step;
    const double d_next = derivative(h_next);
    if (d_prev == 0.0) {
      candidates.push_back(h_prev);
    } else if ((d_prev > 0.0 && d_next < 0.0) || (d_prev < 0.0 && d_next > 0.0)) {
      ++brackets;
      double lo = h_prev;
      double hi = h_next;
      const bool rising_at_lo = d_prev > 0.0;
      while (hi - lo > config.refine_tolerance) {
        const double mid = 0.5 * (lo + hi);
        const double d_mid = derivative(mid);
        if (d_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((d_mid > 0.0) == rising_at_lo) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      candidates.push_back(0.5 * (lo + hi));
    }
    h_prev = h_next;
    d_prev = d_next;
  }
  if (d_prev == 0.0) candidates.push_back(h_prev);

  const double mu = prior.mean();
  double best_h = candidates.front();
  double best_value = -std::numeric_limits<double>::infinity();
  for (double h : candidates) {
    const double value = log_posterior_profile(Hurst(h), energies, prior);
    if (value > best_value ||
        (value == best_value && std::abs(h - mu) < std::abs(best_h - mu))) {
      best_value = value;
      best_h = h;
    }
  }

  EstimateResult result;
  result.h_hat = Hurst(best_h);
  result.sigma2_hat = profile_sigma2(result.h_hat, energies);
  result.log_posterior_at_mode = best_value;
  result.method = Method::bayes_map;
  result.levels_used = {energies.j1(), energies.j2()};
  result.diagnostics.root_brackets = brackets;
  result.diagnostics.boundary_hit = (best_h == config.h_min || best_h == config.h_max);
  return result;
}

}  // namespace hurst
