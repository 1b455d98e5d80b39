#pragma once

// Monte Carlo experiments: simulate fBm replicates, estimate H with the
// regression baseline and the MAP estimator under several priors, and report
// mean / variance / MSE / squared bias per cell.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hurst/detail/summation.hpp"
#include "hurst/error.hpp"
#include "hurst/fbm.hpp"
#include "hurst/ndwt.hpp"
#include "hurst/posterior.hpp"
#include "hurst/regression.hpp"

namespace hurst {

struct ExperimentConfig {
  std::size_t replicates = 200;
  std::size_t n = 2048;
  Hurst hurst{0.5};
  double sigma = 1.0;
  std::string wavelet = "haar";
  int depth = 8;
  int j1 = 4;
  int j2 = 6;
  std::vector<BetaPrior> priors;
  std::uint64_t master_seed = 1;
  SolverConfig solver{};
  unsigned threads = 0;  // 0: HURST_THREADS or hardware concurrency
  bool include_regression = true;

  void validate() const {
    require(replicates >= 1, "replicates must be at least 1");
    require(n >= 2 && is_power_of_two(n), "simulation length must be a power of two");
    require(std::isfinite(sigma) && sigma > 0.0, "sigma must be positive");
    const int J = floor_log2(n);
    require(depth >= 1 && depth <= J, "depth must be in [1, log2 n]");
    require(j1 <= j2 && j1 >= J - depth && j2 <= J - 1,
            "levels " + std::to_string(j1) + ":" + std::to_string(j2) + " outside [" +
                std::to_string(J - depth) + ", " + std::to_string(J - 1) + "]");
    require(include_regression || !priors.empty(), "experiment has no estimators");
    solver.validate();
  }
};

struct Summary {
  double mean = 0.0;
  double variance = 0.0;
  double mse = 0.0;
  double squared_bias = 0.0;
};

/// Population statistics (divisor N) so that mse = variance + squared_bias.
inline Summary summarize(const std::vector<double>& raw, Hurst true_h) {
  require(!raw.empty(), "summarize needs at least one estimate");
  const double count = static_cast<double>(raw.size());
  const double h = true_h.value();

  const double mean = detail::compensated_sum(raw) / count;
  detail::CompensatedSum var_acc;
  detail::CompensatedSum mse_acc;
  for (double x : raw) {
    var_acc.add((x - mean) * (x - mean));
    mse_acc.add((x - h) * (x - h));
  }
  Summary s;
  s.mean = mean;
  s.variance = var_acc.value() / count;
  s.mse = mse_acc.value() / count;
  s.squared_bias = (mean - h) * (mean - h);
  return s;
}

struct ReportCell {
  Method method = Method::regression;
  std::optional<BetaPrior> prior;  // set for Bayes cells
  Summary summary;
  std::vector<double> raw;  // replicate order
};

struct MonteCarloReport {
  ExperimentConfig config;
  std::vector<ReportCell> cells;  // Bayes cells in prior order, then regression
};

/// Worker count: explicit request, else HURST_THREADS, else hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HURST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline MonteCarloReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const WaveletFilter filter = make_wavelet_filter(config.wavelet);
  const FgnSampler sampler(config.n, config.hurst, config.sigma);
  const std::size_t reps = config.replicates;
  const std::size_t n_priors = config.priors.size();

  // estimates[p][r]; p = n_priors is the regression column
  std::vector<std::vector<double>> estimates(n_priors + 1, std::vector<double>(reps));
  std::vector<std::exception_ptr> failures(reps);

  auto run_replicate = [&](std::size_t r) {
    try {
      const Signal path = generate_fbm(sampler, derive_seed(config.master_seed, r));
      const auto decomp = ndwt_decompose(path, config.depth, filter);
      const auto energies = level_energies(decomp, config.j1, config.j2);
      for (std::size_t p = 0; p < n_priors; ++p) {
        estimates[p][r] = map_estimate(energies, config.priors[p], config.solver).h_hat.value();
      }
      if (config.include_regression) {
        estimates[n_priors][r] = regression_estimate(energies, config.solver).h_hat.value();
      }
    } catch (...) {
      failures[r] = std::current_exception();
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(config.threads), reps));
  if (workers <= 1) {
    for (std::size_t r = 0; r < reps; ++r) run_replicate(r);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < reps; r += workers) run_replicate(r);
      });
    }
  }

  for (std::size_t r = 0; r < reps; ++r) {
    if (!failures[r]) continue;
    try {
      std::rethrow_exception(failures[r]);
    } catch (const Error& e) {
      fail(e.kind(), "replicate " + std::to_string(r) + ": " + e.what());
    }
  }

  MonteCarloReport report;
  report.config = config;
  for (std::size_t p = 0; p < n_priors; ++p) {
    ReportCell cell;
    cell.method = Method::bayes_map;
    cell.prior = config.priors[p];
    cell.summary = summarize(estimates[p], config.hurst);
    cell.raw = std::move(estimates[p]);
    report.cells.push_back(std::move(cell));
  }
  if (config.include_regression) {
    ReportCell cell;
    cell.method = Method::regression;
    cell.summary = summarize(estimates[n_priors], config.hurst);
    cell.raw = std::move(estimates[n_priors]);
    report.cells.push_back(std::move(cell));
  }
  return report;
}

}  // namespace hurst
