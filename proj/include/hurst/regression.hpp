#pragma once

// Baseline estimator: unweighted least-squares line through the wavelet
// spectrum (j, log2 y_j). The slope is -(2H + m).

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "hurst/error.hpp"
#include "hurst/ndwt.hpp"
#include "hurst/posterior.hpp"

namespace hurst {

struct SpectrumFit {
  std::vector<std::pair<int, double>> points;  // (j, log2 y_j)
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares fit of log2 y_j on j. Zero-energy levels are degenerate.
inline SpectrumFit fit_log_spectrum(const LevelEnergies& energies) {
  if (energies.c() < 2) {
    fail(ErrorKind::insufficient_levels, "spectrum regression needs at least two levels");
  }
  SpectrumFit fit;
  for (const auto& [j, y] : energies.entries()) {
    if (!(y > 0.0)) {
      fail(ErrorKind::degenerate_input, "level " + std::to_string(j) + " has zero energy");
    }
    fit.points.emplace_back(j, std::log2(y));
  }
  const double count = static_cast<double>(fit.points.size());
  double mean_j = 0.0;
  double mean_v = 0.0;
  for (const auto& [j, v] : fit.points) {
    mean_j += j;
    mean_v += v;
  }
  mean_j /= count;
  mean_v /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [j, v] : fit.points) {
    sxx += (j - mean_j) * (j - mean_j);
    sxy += (j - mean_j) * (v - mean_v);
  }
  fit.slope = sxy / sxx;
  fit.intercept = mean_v - fit.slope * mean_j;
  return fit;
}

inline EstimateResult regression_estimate(const LevelEnergies& energies,
                                          const SolverConfig& bounds = {}) {
  bounds.validate();
  const SpectrumFit fit = fit_log_spectrum(energies);
  const double raw = -(fit.slope + energies.m()) / 2.0;
  const double clamped = std::clamp(raw, bounds.h_min, bounds.h_max);

  EstimateResult result;
  result.h_hat = Hurst(clamped);
  result.sigma2_hat = std::exp2(fit.intercept);
  result.method = Method::regression;
  result.levels_used = {energies.j1(), energies.j2()};
  result.diagnostics.boundary_hit = clamped != raw;
  return result;
}

}  // namespace hurst
