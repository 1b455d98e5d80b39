// hurst: estimate the Hurst exponent of a series from NDWT level energies.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "hurst/cli.hpp"
#include "hurst/wavelet_filter.hpp"

namespace {

template <class T>
void add_optional(CLI::App* app, const std::string& name, std::optional<T>& target,
                  const std::string& help) {
  app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hurst::cli;

  CLI::App app{"Bayesian (MAP) and regression Hurst exponent estimation on NDWT level energies.\n"
               "Levels follow the multiresolution convention: for n = 2^J the finest level is J-1."};
  app.require_subcommand(1);

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "Estimate H for a series read from a file");
  estimate->add_option("input", est.input, "Single-column text or CSV file")->required();
  estimate->add_option("--wavelet", est.wavelet, "haar or db2..db8")->capture_default_str();
  estimate->add_option("--depth", est.depth, "NDWT depth")->capture_default_str();
  estimate->add_option("--levels", est.levels, "Level range j1:j2 (finest level is J-1)")
      ->required();
  estimate->add_option("--method", est.method, "bayes, regression or both")
      ->check(CLI::IsMember({"bayes", "regression", "both"}))
      ->capture_default_str();
  add_optional(estimate, "--prior-mean", est.prior.prior_mean, "Prior mean of H");
  add_optional(estimate, "--ess", est.prior.ess, "Prior effective sample size (default n/2)");
  add_optional(estimate, "--alpha", est.prior.alpha, "Beta prior alpha (with --beta)");
  add_optional(estimate, "--beta", est.prior.beta, "Beta prior beta (with --alpha)");
  estimate->add_option("--format", est.format, "table, json or csv")->capture_default_str();
  estimate->add_flag("--strict", est.strict, "Reject non-power-of-two input instead of truncating");

  SpectrumOptions spec;
  auto* spectrum = app.add_subcommand("spectrum", "Emit the wavelet spectrum (j, log2 y_j) and fit");
  spectrum->add_option("input", spec.input, "Single-column text or CSV file")->required();
  spectrum->add_option("--wavelet", spec.wavelet, "haar or db2..db8")->capture_default_str();
  spectrum->add_option("--depth", spec.depth, "NDWT depth")->capture_default_str();
  spectrum->add_option("--levels", spec.levels, "Fit range j1:j2 (default: all levels)");
  spectrum->add_option("--format", spec.format, "table, json or csv")->capture_default_str();
  spectrum->add_flag("--strict", spec.strict, "Reject non-power-of-two input instead of truncating");

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo comparison on simulated fBm");
  simulate->add_option("--hurst", sim.hurst, "True H of the simulated paths")->required();
  simulate->add_option("--n", sim.n, "Path length (power of two)")->capture_default_str();
  simulate->add_option("--reps", sim.reps, "Replicates")->capture_default_str();
  simulate->add_option("--sigma", sim.sigma, "fBm scale")->capture_default_str();
  simulate->add_option("--prior-means", sim.prior_means, "Prior means (default H-0.05,H,H+0.05)")
      ->delimiter(',');
  add_optional(simulate, "--ess", sim.ess, "Prior effective sample size (default n/2)");
  simulate->add_option("--levels", sim.levels, "Level range j1:j2 (default J-7:J-5)");
  simulate->add_option("--depth", sim.depth, "NDWT depth")->capture_default_str();
  simulate->add_option("--wavelet", sim.wavelet, "haar or db2..db8")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  simulate->add_option("--threads", sim.threads, "Worker threads (0: HURST_THREADS or all cores)")
      ->capture_default_str();
  simulate->add_flag("--raw", sim.raw, "Also emit per-replicate estimates");
  simulate->add_flag("--no-regression", sim.no_regression, "Skip the regression baseline");
  simulate->add_option("--format", sim.format, "table, json or csv")->capture_default_str();

  ElicitOptions eli;
  auto* elicit = app.add_subcommand("elicit", "Beta prior from a mean and effective sample size");
  add_optional(elicit, "--mean", eli.mean, "Prior mean in (0, 1)");
  add_optional(elicit, "--ess", eli.ess, "Effective sample size alpha+beta");
  add_optional(elicit, "--n", eli.n, "Signal length; ess = n/2");
  elicit->add_option("--format", eli.format, "table, json or csv")->capture_default_str();

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Write a seeded fBm sample path, one value per line");
  generate->add_option("--hurst", gen.hurst, "Hurst exponent")->required();
  generate->add_option("--n", gen.n, "Length")->capture_default_str();
  generate->add_option("--sigma", gen.sigma, "Scale")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[usage]: " << e.what() << '\n';
    return exit_usage;
  }

  if (*estimate) return run_estimate(est, std::cout, std::cerr);
  if (*spectrum) return run_spectrum(spec, std::cout, std::cerr);
  if (*simulate) return run_simulate(sim, std::cout, std::cerr);
  if (*elicit) return run_elicit(eli, std::cout, std::cerr);
  if (*generate) return run_generate(gen, std::cout, std::cerr);
  return exit_usage;
}
