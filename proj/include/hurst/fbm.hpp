#pragma once

// Fractional Brownian motion: covariance kernels and exact sampling on the
// unit integer grid by circulant embedding of the increment process.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hurst/detail/fft.hpp"
#include "hurst/error.hpp"
#include "hurst/signal.hpp"

namespace hurst {

struct FbmSpec {
  std::size_t n = 2048;
  Hurst hurst{0.5};
  double sigma = 1.0;
  std::uint64_t seed = 0;

  void validate() const {
    require(n >= 2, "fBm length must be at least 2");
    require(std::isfinite(sigma) && sigma > 0.0, "fBm scale sigma must be positive");
  }
};

/// E[B_H(t) B_H(s)] = (sigma2/2)(|t|^2H + |s|^2H - |t-s|^2H)
inline double fbm_covariance(double t, double s, Hurst hurst, double sigma2) {
  require(std::isfinite(t) && std::isfinite(s), "fbm_covariance: time arguments must be finite");
  require(std::isfinite(sigma2) && sigma2 > 0.0, "fbm_covariance: sigma2 must be positive");
  const double two_h = 2.0 * hurst.value();
  return 0.5 * sigma2 *
         (std::pow(std::abs(t), two_h) + std::pow(std::abs(s), two_h) -
          std::pow(std::abs(t - s), two_h));
}

/// Autocovariance of unit-spaced fBm increments (fractional Gaussian noise).
inline double fgn_autocovariance(std::int64_t lag, Hurst hurst, double sigma2) {
  require(lag >= 0, "fgn_autocovariance: lag must be nonnegative");
  require(std::isfinite(sigma2) && sigma2 > 0.0, "fgn_autocovariance: sigma2 must be positive");
  if (lag == 0) return sigma2;
  const double two_h = 2.0 * hurst.value();
  // independent increments
  if (two_h == 1.0) return 0.0;
  // (l+1)^2H - 2 l^2H + (l-1)^2H = l^2H [((1+u)^2H - 1) + ((1-u)^2H - 1)], u = 1/l,
  // which avoids cancelling two terms of size l^2H at large lags.
  const double l = static_cast<double>(lag);
  const double u = 1.0 / l;
  const double bracket = std::expm1(two_h * std::log1p(u)) + std::expm1(two_h * std::log1p(-u));
  return 0.5 * sigma2 * std::pow(l, two_h) * bracket;
}

/// SplitMix64 finalizer; derives independent replicate seeds from a master seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate) noexcept {
  return mix_seed(mix_seed(master) ^ mix_seed(replicate + 0x632be59bd9b4e019ULL));
}

/// Exact sampler of n fGn increments. The circulant spectrum depends only on
/// (n, H, sigma), so one sampler can serve many replicates.
class FgnSampler {
 public:
  FgnSampler(std::size_t n, Hurst hurst, double sigma) : n_(n) {
    require(n >= 2, "fGn length must be at least 2");
    require(std::isfinite(sigma) && sigma > 0.0, "fGn scale sigma must be positive");
    const std::size_t half = std::bit_ceil(n);
    const std::size_t m = 2 * half;
    const double sigma2 = sigma * sigma;

    std::vector<std::complex<double>> row(m);
    for (std::size_t k = 0; k <= half; ++k) {
      row[k] = fgn_autocovariance(static_cast<std::int64_t>(k), hurst, sigma2);
    }
    for (std::size_t k = 1; k < half; ++k) row[m - k] = row[k];
    detail::forward_dft(row);

    double max_eig = 0.0;
    for (const auto& z : row) max_eig = std::max(max_eig, z.real());
    const double tolerance = -1e-10 * max_eig;

    scale_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      double eig = row[k].real();
      if (eig < 0.0) {
        if (eig < tolerance) {
          fail(ErrorKind::internal_consistency,
               "circulant embedding produced eigenvalue " + std::to_string(eig) +
                   " below tolerance for H=" + std::to_string(hurst.value()));
        }
        eig = 0.0;
      }
      scale_[k] = std::sqrt(eig / static_cast<double>(m));
    }
  }

  std::size_t size() const noexcept { return n_; }

  std::vector<double> sample(std::mt19937_64& rng) const {
    std::normal_distribution<double> normal;
    const std::size_t m = scale_.size();
    std::vector<std::complex<double>> w(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double re = normal(rng);
      const double im = normal(rng);
      w[k] = {scale_[k] * re, scale_[k] * im};
    }
    detail::forward_dft(w);
    std::vector<double> out(n_);
    for (std::size_t k = 0; k < n_; ++k) out[k] = w[k].real();
    return out;
  }

 private:
  std::size_t n_;
  std::vector<double> scale_;
};

/// Cumulative sum of increments; the path starts at its first increment.
inline Signal integrate_increments(std::vector<double> increments) {
  double acc = 0.0;
  for (double& x : increments) {
    acc += x;
    x = acc;
  }
  return Signal(std::move(increments));
}

inline Signal generate_fbm(const FgnSampler& sampler, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return integrate_increments(sampler.sample(rng));
}

inline Signal generate_fbm(const FbmSpec& spec) {
  spec.validate();
  return generate_fbm(FgnSampler(spec.n, spec.hurst, spec.sigma), spec.seed);
}

}  // namespace hurst
