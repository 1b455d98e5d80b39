#pragma once

// Non-decimated (a trous) wavelet transform with periodic boundaries, and the
// per-level averaged energies consumed by the estimators.
//
// Level convention: for a signal of length n = 2^J, cascade stage s = 1 (the
// finest) is stored as level j = J - 1 and stage s as j = J - s. Larger j is
// finer detail.

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hurst/error.hpp"
#include "hurst/signal.hpp"
#include "hurst/wavelet_filter.hpp"

namespace hurst {

class NdwtDecomposition {
 public:
  NdwtDecomposition(int J, WaveletFilter filter, std::vector<std::vector<double>> details,
                    std::vector<double> smooth)
      : J_(J),
        filter_(std::move(filter)),
        details_(std::move(details)),
        smooth_(std::move(smooth)) {}

  int J() const noexcept { return J_; }
  int depth() const noexcept { return static_cast<int>(details_.size()); }
  std::size_t size() const noexcept { return smooth_.size(); }
  const WaveletFilter& filter() const noexcept { return filter_; }

  int coarsest_level() const noexcept { return J_ - depth(); }
  int finest_level() const noexcept { return J_ - 1; }
  bool has_level(int j) const noexcept { return j >= coarsest_level() && j <= finest_level(); }

  std::span<const double> detail(int level) const {
    require(has_level(level), "level " + std::to_string(level) + " outside decomposition range [" +
                                  std::to_string(coarsest_level()) + ", " +
                                  std::to_string(finest_level()) + "]");
    return details_[static_cast<std::size_t>(J_ - 1 - level)];
  }

  std::span<const double> smooth() const noexcept { return smooth_; }

 private:
  int J_;
  WaveletFilter filter_;
  std::vector<std::vector<double>> details_;  // index s-1
  std::vector<double> smooth_;
};

inline NdwtDecomposition ndwt_decompose(const Signal& signal, int depth,
                                        const WaveletFilter& filter = haar_filter(),
                                        int dimension = 1) {
  require(dimension == 1, "the transform is one-dimensional; dimension " +
                              std::to_string(dimension) + " is not supported");
  const std::size_t n = signal.size();
  require(is_power_of_two(n), "NDWT needs a power-of-two length, got " + std::to_string(n));
  const int J = signal.log2_size();
  require(depth >= 1 && depth <= J, "NDWT depth must be in [1, " + std::to_string(J) + "], got " +
                                        std::to_string(depth));

  const auto lo = filter.lowpass();
  const auto hi = filter.highpass();
  const std::size_t L = filter.length();

  std::vector<double> approx(signal.samples().begin(), signal.samples().end());
  std::vector<double> next(n);
  std::vector<std::vector<double>> details;
  details.reserve(static_cast<std::size_t>(depth));
  std::vector<std::size_t> offset(L);

  for (int s = 1; s <= depth; ++s) {
    const std::size_t gap = std::size_t{1} << (s - 1);
    for (std::size_t t = 0; t < L; ++t) offset[t] = (t * gap) % n;

    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k) {
      double a = 0.0;
      double w = 0.0;
      for (std::size_t t = 0; t < L; ++t) {
        std::size_t idx = k + offset[t];
        if (idx >= n) idx -= n;
        a += lo[t] * approx[idx];
        w += hi[t] * approx[idx];
      }
      next[k] = a;
      d[k] = w;
    }
    details.push_back(std::move(d));
    approx.swap(next);
  }
  return NdwtDecomposition(J, filter, std::move(details), std::move(approx));
}

/// Averaged squared detail coefficients y_j over a contiguous level range.
class LevelEnergies {
 public:
  /// `levels` may be given in any order but must cover a contiguous range.
  LevelEnergies(const std::vector<std::pair<int, double>>& levels, int J, int m = 1)
      : m_(m), J_(J) {
    require(!levels.empty(), "level energies need at least one level");
    require(J >= 1, "J must be positive");
    require(m >= 1, "dimension m must be positive");
    for (const auto& [j, y] : levels) {
      require(std::isfinite(y) && y >= 0.0,
              "energy at level " + std::to_string(j) + " must be finite and nonnegative");
      require(energies_.emplace(j, y).second, "duplicate level " + std::to_string(j));
    }
    const int lo = energies_.begin()->first;
    const int hi = energies_.rbegin()->first;
    require(static_cast<std::size_t>(hi - lo + 1) == energies_.size(),
            "energy levels must be contiguous");
  }

  int m() const noexcept { return m_; }
  int J() const noexcept { return J_; }
  int j1() const noexcept { return energies_.begin()->first; }
  int j2() const noexcept { return energies_.rbegin()->first; }
  /// number of levels
  int c() const noexcept { return static_cast<int>(energies_.size()); }
  /// chi-square count per level, 2^(mJ)
  double b() const noexcept { return std::ldexp(1.0, m_ * J_); }

  double energy(int j) const {
    auto it = energies_.find(j);
    require(it != energies_.end(), "no energy stored for level " + std::to_string(j));
    return it->second;
  }

  const std::map<int, double>& entries() const noexcept { return energies_; }

  LevelEnergies scaled(double k) const {
    std::vector<std::pair<int, double>> out;
    for (const auto& [j, y] : energies_) out.emplace_back(j, k * y);
    return LevelEnergies(out, J_, m_);
  }

 private:
  std::map<int, double> energies_;
  int m_;
  int J_;
};

inline LevelEnergies level_energies(const NdwtDecomposition& decomp, int j1, int j2) {
  require(j1 <= j2, "level range j1:j2 needs j1 <= j2");
  require(decomp.has_level(j1) && decomp.has_level(j2),
          "levels " + std::to_string(j1) + ":" + std::to_string(j2) +
              " outside decomposition range " + std::to_string(decomp.coarsest_level()) + ":" +
              std::to_string(decomp.finest_level()));
  std::vector<std::pair<int, double>> levels;
  for (int j = j1; j <= j2; ++j) {
    double sum = 0.0;
    for (double d : decomp.detail(j)) sum += d * d;
    const double y = sum / static_cast<double>(decomp.size());
    if (!(y > 0.0)) {
      fail(ErrorKind::degenerate_input,
           "level " + std::to_string(j) + " has zero energy (constant or level-dead signal)");
    }
    levels.emplace_back(j, y);
  }
  return LevelEnergies(levels, decomp.J(), 1);
}

}  // namespace hurst
