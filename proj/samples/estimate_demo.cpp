// Simulate one fBm path, then compare the MAP and regression estimates of H.

#include <cstdio>

#include "hurst/hurst.hpp"

int main() {
  using namespace hurst;

  const Signal path = generate_fbm(FbmSpec{2048, Hurst(0.3), 1.0, 42});
  const auto decomp = ndwt_decompose(path, 8, haar_filter());
  const auto energies = level_energies(decomp, 4, 6);

  const BetaPrior prior = elicit_beta(0.3, default_ess(path.size()));
  const EstimateResult bayes = map_estimate(energies, prior);
  const EstimateResult ols = regression_estimate(energies);

  std::printf("prior       beta(%.1f, %.1f)\n", prior.alpha(), prior.beta());
  std::printf("bayes-map   H = %.5f  sigma2 = %.5g\n", bayes.h_hat.value(), bayes.sigma2_hat);
  std::printf("regression  H = %.5f  sigma2 = %.5g\n", ols.h_hat.value(), ols.sigma2_hat);
  return 0;
}
