#pragma once

// Command implementations behind the `hurst` executable. Each command takes a
// plain options struct, writes to the given streams, and returns the process
// exit code; argument parsing lives in tools/hurst.cpp.

#include <charconv>
#include <cstdint>
#include <tuple>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hurst/error.hpp"
#include "hurst/fbm.hpp"
#include "hurst/harness.hpp"
#include "hurst/io.hpp"
#include "hurst/ndwt.hpp"
#include "hurst/posterior.hpp"
#include "hurst/prior.hpp"
#include "hurst/regression.hpp"
#include "hurst/report.hpp"

namespace hurst::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 2,
  exit_parse = 3,
  exit_degenerate = 4,
  exit_internal = 5,
  exit_unreadable = 6,
  exit_empty = 7,
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::insufficient_levels: return exit_usage;
    case ErrorKind::parse_error: return exit_parse;
    case ErrorKind::degenerate_input: return exit_degenerate;
    case ErrorKind::io_error: return exit_unreadable;
    case ErrorKind::empty_input: return exit_empty;
    case ErrorKind::internal_consistency: return exit_internal;
  }
  return exit_internal;
}

/// "j1:j2"
inline std::pair<int, int> parse_level_range(const std::string& text) {
  const auto colon = text.find(':');
  auto parse_int = [&](std::string_view s, int& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
  };
  int j1 = 0;
  int j2 = 0;
  std::string_view view(text);
  if (colon == std::string::npos || !parse_int(view.substr(0, colon), j1) ||
      !parse_int(view.substr(colon + 1), j2)) {
    fail(ErrorKind::invalid_argument, "level range must look like j1:j2, got '" + text + "'");
  }
  require(j1 <= j2, "level range " + text + " has j1 > j2");
  return {j1, j2};
}

struct PriorOptions {
  std::optional<double> prior_mean;
  std::optional<double> ess;
  std::optional<double> alpha;
  std::optional<double> beta;

  bool given() const { return prior_mean || alpha || beta; }

  BetaPrior resolve(std::size_t n) const {
    if (alpha || beta) {
      require(alpha && beta, "--alpha and --beta must be given together");
      require(!prior_mean && !ess, "give either --alpha/--beta or --prior-mean/--ess, not both");
      return BetaPrior(*alpha, *beta);
    }
    require(prior_mean.has_value(), "Bayes estimation needs --prior-mean or --alpha/--beta");
    return elicit_beta(*prior_mean, ess ? *ess : default_ess(n));
  }
};

struct EstimateOptions {
  std::string input;
  std::string wavelet = "haar";
  int depth = 8;
  std::string levels;  // required, "j1:j2"
  std::string method = "both";
  PriorOptions prior;
  std::string format = "table";
  bool strict = false;
};

struct SpectrumOptions {
  std::string input;
  std::string wavelet = "haar";
  int depth = 8;
  std::string levels;  // empty: every computed level
  std::string format = "table";
  bool strict = false;
};

struct SimulateOptions {
  double hurst = 0.5;
  std::size_t n = 2048;
  std::size_t reps = 200;
  double sigma = 1.0;
  std::vector<double> prior_means;  // empty: H - 0.05, H, H + 0.05
  std::optional<double> ess;
  std::string levels;  // empty: J-7 : J-5
  int depth = 8;
  std::string wavelet = "haar";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool raw = false;
  bool no_regression = false;
  std::string format = "table";
};

struct ElicitOptions {
  std::optional<double> mean;
  std::optional<double> ess;
  std::optional<std::size_t> n;
  std::string format = "table";
};

struct GenerateOptions {
  double hurst = 0.5;
  std::size_t n = 2048;
  double sigma = 1.0;
  std::uint64_t seed = 1;
};

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    fn();
    return exit_ok;
  } catch (const Error& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << '\n';
    return exit_internal;
  }
}

struct LoadedInput {
  Signal signal;
  std::size_t n_input;
};

inline LoadedInput load_input(const std::string& path, bool strict, std::ostream& err) {
  auto series = read_series(path);
  const std::size_t n_input = series.samples.size();
  return {to_dyadic_signal(std::move(series.samples), strict, &err), n_input};
}

/// Library pipeline behind `estimate`; the CLI adds only I/O around it.
inline EstimateReport build_estimate_report(const Signal& signal, std::size_t n_input,
                                            const EstimateOptions& opts,
                                            const std::string& source) {
  const bool want_bayes = opts.method == "bayes" || opts.method == "both";
  const bool want_regression = opts.method == "regression" || opts.method == "both";
  require(want_bayes || want_regression,
          "--method must be bayes, regression or both, got '" + opts.method + "'");
  require(!opts.levels.empty(), "--levels j1:j2 is required (finest level is J-1)");
  const auto [j1, j2] = parse_level_range(opts.levels);

  EstimateReport report;
  report.source = source;
  report.n_input = n_input;
  report.n_used = signal.size();
  report.J = signal.log2_size();
  report.wavelet = opts.wavelet;
  report.depth = opts.depth;
  report.j1 = j1;
  report.j2 = j2;
  std::optional<BetaPrior> prior;
  if (want_bayes) prior = opts.prior.resolve(signal.size());

  const auto decomp = ndwt_decompose(signal, opts.depth, make_wavelet_filter(opts.wavelet));
  const auto energies = level_energies(decomp, j1, j2);
  if (want_bayes) {
    report.prior = prior;
    report.estimates.push_back(map_estimate(energies, *prior));
  }
  if (want_regression) report.estimates.push_back(regression_estimate(energies));
  return report;
}

inline int run_estimate(const EstimateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto format = parse_output_format(opts.format);
    require(!opts.levels.empty(), "--levels j1:j2 is required (finest level is J-1)");
    const auto input = load_input(opts.input, opts.strict, err);
    write_report(out, build_estimate_report(input.signal, input.n_input, opts, opts.input), format);
  });
}

inline SpectrumFit build_spectrum(const Signal& signal, const SpectrumOptions& opts) {
  const auto decomp = ndwt_decompose(signal, opts.depth, make_wavelet_filter(opts.wavelet));
  auto [j1, j2] = opts.levels.empty()
                      ? std::pair{decomp.coarsest_level(), decomp.finest_level()}
                      : parse_level_range(opts.levels);
  return fit_log_spectrum(level_energies(decomp, j1, j2));
}

inline int run_spectrum(const SpectrumOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto format = parse_output_format(opts.format);
    const auto input = load_input(opts.input, opts.strict, err);
    write_spectrum(out, build_spectrum(input.signal, opts), 1, format);
  });
}

inline ExperimentConfig build_experiment(const SimulateOptions& opts) {
  ExperimentConfig cfg;
  cfg.replicates = opts.reps;
  cfg.n = opts.n;
  cfg.hurst = Hurst(opts.hurst);
  cfg.sigma = opts.sigma;
  cfg.wavelet = opts.wavelet;
  cfg.depth = opts.depth;
  cfg.master_seed = opts.seed;
  cfg.threads = opts.threads;
  cfg.include_regression = !opts.no_regression;
  require(opts.n >= 2 && is_power_of_two(opts.n), "--n must be a power of two");
  const int J = floor_log2(opts.n);
  if (opts.levels.empty()) {
    cfg.j1 = J - 7;
    cfg.j2 = J - 5;
  } else {
    std::tie(cfg.j1, cfg.j2) = parse_level_range(opts.levels);
  }
  std::vector<double> means = opts.prior_means;
  if (means.empty()) {
    for (double mu : {opts.hurst - 0.05, opts.hurst, opts.hurst + 0.05}) {
      if (mu > 0.0 && mu < 1.0) means.push_back(mu);
    }
  }
  const double ess = opts.ess ? *opts.ess : default_ess(opts.n);
  for (double mu : means) cfg.priors.push_back(elicit_beta(mu, ess));
  return cfg;
}

inline int run_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto format = parse_output_format(opts.format);
    write_monte_carlo(out, run_experiment(build_experiment(opts)), format, opts.raw);
  });
}

inline int run_elicit(const ElicitOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto format = parse_output_format(opts.format);
    require(opts.mean.has_value(), "--mean is required");
    require(opts.ess || opts.n, "give --ess or --n");
    require(!(opts.ess && opts.n), "give only one of --ess and --n");
    const double ess = opts.ess ? *opts.ess : default_ess(*opts.n);
    write_prior(out, elicit_beta(*opts.mean, ess), format);
  });
}

inline int run_generate(const GenerateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    FbmSpec spec{opts.n, Hurst(opts.hurst), opts.sigma, opts.seed};
    write_series(out, generate_fbm(spec));
  });
}

}  // namespace hurst::cli
