#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "hurst/posterior.hpp"
#include "hurst/prior.hpp"
#include "oracles.hpp"

using namespace hurst;

namespace {

// integral of exp(log density) over [0, inf), split around the mean
double density_mass(int j, double h, double sigma2, int m, int J) {
  const double b = std::pow(2.0, m * J);
  const double mean = sigma2 * std::pow(2.0, -(2.0 * h + m) * j);
  const double sd = mean * std::sqrt(2.0 / b);
  auto g = [&](double y) {
    return y <= 0.0 ? 0.0 : std::exp(energy_log_density(y, j, Hurst(h), sigma2, m, J));
  };
  const double lo = std::max(0.0, mean - 40.0 * sd);
  const double hi = mean + 60.0 * sd;
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  const int pieces = 16;
  for (int i = 0; i < pieces; ++i) {
    const double a = lo + (hi - lo) * i / pieces;
    const double c = lo + (hi - lo) * (i + 1) / pieces;
    total += gauss_kronrod<double, 61>::integrate(g, a, c, 6, 1e-13);
  }
  return total;
}

double density_moment(int j, double h, double sigma2, int m, int J) {
  const double b = std::pow(2.0, m * J);
  const double mean = sigma2 * std::pow(2.0, -(2.0 * h + m) * j);
  const double sd = mean * std::sqrt(2.0 / b);
  auto g = [&](double y) {
    return y <= 0.0 ? 0.0 : y * std::exp(energy_log_density(y, j, Hurst(h), sigma2, m, J));
  };
  using boost::math::quadrature::gauss_kronrod;
  const double lo = std::max(0.0, mean - 40.0 * sd);
  const double hi = mean + 60.0 * sd;
  double total = 0.0;
  for (int i = 0; i < 16; ++i) {
    total += gauss_kronrod<double, 61>::integrate(g, lo + (hi - lo) * i / 16,
                                                   lo + (hi - lo) * (i + 1) / 16, 6, 1e-13);
  }
  return total;
}

LevelEnergies random_energies(std::mt19937_64& rng, int J, int j1, int j2) {
  std::uniform_real_distribution<double> h(0.1, 0.9);
  std::uniform_real_distribution<double> log_s2(-3.0, 3.0);
  return oracle::model_energies(rng, J, j1, j2, h(rng), std::exp(log_s2(rng)));
}

}  // namespace

TEST(EnergyDensity, IntegratesToOne) {
  EXPECT_NEAR(density_mass(1, 0.5, 1.0, 1, 3), 1.0, 1e-6);
  for (int J = 1; J <= 6; ++J) {
    for (double h : {0.2, 0.5, 0.8}) {
      EXPECT_NEAR(density_mass(std::max(0, J - 2), h, 1.7, 1, J), 1.0, 1e-6) << J << " " << h;
    }
  }
}

TEST(EnergyDensity, MeanMatchesVarianceLaw) {
  const double expected = 2.0 * std::pow(2.0, -(2.0 * 0.3 + 1.0) * 2);
  EXPECT_NEAR(density_moment(2, 0.3, 2.0, 1, 4), expected, 1e-6);
}

TEST(EnergyDensity, ModeMatchesGridArgmax) {
  // scaled chi-square with b dof: mode at (b - 2)/b * mean
  const int J = 5;
  const int j = 3;
  const double h = 0.4;
  const double s2 = 1.3;
  const double b = std::pow(2.0, J);
  const double mean = s2 * std::pow(2.0, -(2.0 * h + 1.0) * j);
  const double mode = (b - 2.0) / b * mean;
  double best_y = 0.0;
  double best = -INFINITY;
  const double step = mean * 1e-6;
  for (double y = 0.5 * mean; y < 1.5 * mean; y += step) {
    const double v = energy_log_density(y, j, Hurst(h), s2, 1, J);
    if (v > best) {
      best = v;
      best_y = y;
    }
  }
  EXPECT_NEAR(best_y, mode, 2.0 * step);
}

TEST(EnergyDensity, LogDomainForLargeJ) {
  const double v = energy_log_density(std::pow(2.0, -1.6 * 10), 10, Hurst(0.3), 1.0, 1, 20);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_THROW(energy_log_density(0.0, 1, Hurst(0.3), 1.0, 1, 4), Error);
  EXPECT_THROW(energy_log_density(-1.0, 1, Hurst(0.3), 1.0, 1, 4), Error);
}

TEST(LogLikelihood, SingleLevelIsOneDensityTerm) {
  const LevelEnergies e({{3, 0.02}}, 6);
  EXPECT_EQ(log_likelihood(Hurst(0.4), 0.9, e), energy_log_density(0.02, 3, Hurst(0.4), 0.9, 1, 6));
}

TEST(LogLikelihood, MatchesFactoredClosedForm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 200; ++trial) {
    const int J = 3 + trial % 9;
    const int j1 = trial % 3;
    const int j2 = std::min(J - 1, j1 + 1 + trial % 4);
    const auto e = random_energies(rng, J, j1, j2);
    const double h = u(rng);
    const double s2 = std::exp(4.0 * u(rng) - 2.0);
    const double ref = oracle::factored_log_likelihood(h, s2, e);
    EXPECT_NEAR(log_likelihood(Hurst(h), s2, e), ref, 1e-9 * std::max(1.0, std::abs(ref)));
  }
}

TEST(LogLikelihood, InvariantToStorageOrder) {
  const LevelEnergies a({{4, 0.1}, {5, 0.03}, {6, 0.01}}, 11);
  const LevelEnergies b({{6, 0.01}, {4, 0.1}, {5, 0.03}}, 11);
  EXPECT_EQ(log_likelihood(Hurst(0.3), 1.0, a), log_likelihood(Hurst(0.3), 1.0, b));
}

TEST(ProfileSigma2, HandValue) {
  // b = 2^3 = 8, c = 1, y_0 = 1 -> 8 / 10
  EXPECT_DOUBLE_EQ(profile_sigma2(Hurst(0.5), LevelEnergies({{0, 1.0}}, 3)), 0.8);
}

TEST(ProfileSigma2, ScalesLinearly) {
  const LevelEnergies e({{4, 0.1}, {5, 0.03}, {6, 0.01}}, 11);
  const double base = profile_sigma2(Hurst(0.37), e);
  EXPECT_EQ(profile_sigma2(Hurst(0.37), e.scaled(8.0)), 8.0 * base);
  EXPECT_EQ(profile_sigma2(Hurst(0.37), e.scaled(0.125)), 0.125 * base);
  EXPECT_NEAR(profile_sigma2(Hurst(0.37), e.scaled(3.7)), 3.7 * base, 1e-14 * 3.7 * base);
}

TEST(ProfileSigma2, ZeroesSigmaStationarityEquation) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 200; ++trial) {
    const int J = 4 + trial % 8;
    const auto e = random_energies(rng, J, 1, std::min(J - 1, 2 + trial % 4));
    const double h = u(rng);
    const double s2 = profile_sigma2(Hurst(h), e);
    const double b = e.b();
    double s0 = 0.0;
    for (const auto& [j, y] : e.entries()) s0 += y * std::pow(2.0, (2.0 * h + 1.0) * j);
    const double first = (b * e.c() + 2.0) / 2.0 / s2;
    const double second = b / (2.0 * s2 * s2) * s0;
    EXPECT_LE(std::abs(second - first), 1e-8 * first);
  }
}

TEST(LogPosteriorProfile, MatchesComposedEvaluation) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int trial = 0; trial < 200; ++trial) {
    const int J = 3 + trial % 10;
    const auto e = random_energies(rng, J, 0, std::min(J - 1, 1 + trial % 5));
    const BetaPrior prior = elicit_beta(u(rng), 1.0 + 500.0 * u(rng));
    const double h = u(rng);
    const double ref = oracle::composed_log_posterior(h, e, prior);
    EXPECT_NEAR(log_posterior_profile(Hurst(h), e, prior), ref,
                1e-9 * std::max(1.0, std::abs(ref)));
  }
}

TEST(LogPosteriorProfile, ArgmaxScaleInvariant) {
  std::mt19937_64 rng(17);
  const auto e = oracle::model_energies(rng, 8, 3, 6, 0.4, 1.0);
  const BetaPrior prior(4.0, 6.0);
  for (double k : {0.01, 1000.0}) {
    EXPECT_NEAR(oracle::dense_grid_argmax(e, prior, 1e-5),
                oracle::dense_grid_argmax(e.scaled(k), prior, 1e-5), 1e-12);
  }
}

TEST(LogPosteriorProfile, LocallyConcaveAtExpectedHalf) {
  const auto e = oracle::expected_energies(11, 4, 6, 0.5, 1.0);
  const BetaPrior prior = elicit_beta(0.5, 1024);
  const double step = 1e-3;
  const double f0 = log_posterior_profile(Hurst(0.5), e, prior);
  const double fp = log_posterior_profile(Hurst(0.5 + step), e, prior);
  const double fm = log_posterior_profile(Hurst(0.5 - step), e, prior);
  EXPECT_LT(fp - 2.0 * f0 + fm, 0.0);
}

TEST(PosteriorDerivative, SingleLevelFlatPriorIsNegativeConstant) {
  for (int j : {1, 3, 7}) {
    const LevelEnergies e({{j, 0.3}}, 9);
    for (double h : {0.1, 0.5, 0.9}) {
      EXPECT_NEAR(posterior_h_derivative(Hurst(h), e, BetaPrior(1.0, 1.0)),
                  -2.0 * std::log(2.0) * j, 1e-9);
    }
  }
}

TEST(PosteriorDerivative, MatchesFiniteDifferences) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int hi = 1; hi <= 9; ++hi) {
    for (int trial = 0; trial < 20; ++trial) {
      const int J = 4 + trial % 8;
      const auto e = random_energies(rng, J, 1, std::min(J - 1, 2 + trial % 4));
      const BetaPrior prior = elicit_beta(u(rng), 2.0 + 1000.0 * u(rng));
      const double h = hi / 10.0;
      const double step = 1e-6;
      const double fd = (oracle::composed_log_posterior(h + step, e, prior) -
                         oracle::composed_log_posterior(h - step, e, prior)) /
                        (2.0 * step);
      const double d = posterior_h_derivative(Hurst(h), e, prior);
      // relative to the derivative, floored by the finite-difference roundoff
      const double scale = std::max(std::abs(d), 1.0);
      EXPECT_LE(std::abs(d - fd), 1e-4 * scale) << "H=" << h << " trial " << trial;
    }
  }
}

TEST(PosteriorDerivative, ScaleInvariant) {
  const LevelEnergies e({{4, 0.1}, {5, 0.03}, {6, 0.012}}, 11);
  const BetaPrior prior(307.2, 716.8);
  for (double h : {0.1, 0.3, 0.77}) {
    const double base = posterior_h_derivative(Hurst(h), e, prior);
    EXPECT_EQ(posterior_h_derivative(Hurst(h), e.scaled(1024.0), prior), base);
    EXPECT_EQ(posterior_h_derivative(Hurst(h), e.scaled(0.0625), prior), base);
    EXPECT_NEAR(posterior_h_derivative(Hurst(h), e.scaled(0.01), prior), base,
                1e-12 * std::abs(base) + 1e-9);
  }
}

TEST(MapEstimate, MatchesDenseGridAtModelExpectations) {
  const auto e = oracle::expected_energies(11, 4, 6, 0.5, 1.0);
  const BetaPrior prior(512, 512);
  const auto r = map_estimate(e, prior);
  EXPECT_NEAR(r.h_hat.value(), oracle::dense_grid_argmax(e, prior), 1e-6);
  EXPECT_FALSE(r.diagnostics.boundary_hit);
  EXPECT_GE(r.diagnostics.root_brackets, 1);
  EXPECT_EQ(r.method, Method::bayes_map);
  EXPECT_EQ(r.sigma2_hat, profile_sigma2(r.h_hat, e));
  EXPECT_EQ(r.levels_used, (std::pair{4, 6}));
}

TEST(MapEstimate, OracleEquivalenceSmallInstances) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int J = 4 + trial % 5;
    const int j1 = trial % 2;
    const auto e = random_energies(rng, J, j1, std::min(J - 1, j1 + 1 + trial % 3));
    const BetaPrior prior = elicit_beta(0.1 + 0.8 * u(rng), 2.0 + 250.0 * u(rng));
    const auto r = map_estimate(e, prior);
    EXPECT_NEAR(r.h_hat.value(), oracle::dense_grid_argmax(e, prior), 1e-6) << trial;
  }
}

TEST(MapEstimate, StationaryAtInteriorMode) {
  std::mt19937_64 rng(31);
  const SolverConfig cfg;
  for (int trial = 0; trial < 50; ++trial) {
    const auto e = oracle::model_energies(rng, 11, 4, 6, 0.2 + 0.012 * trial, 1.0);
    const BetaPrior prior = elicit_beta(0.2 + 0.012 * trial, 1024);
    const auto r = map_estimate(e, prior, cfg);
    ASSERT_FALSE(r.diagnostics.boundary_hit);
    const double h = r.h_hat.value();
    const double d = posterior_h_derivative(r.h_hat, e, prior);
    const double variation = std::abs(posterior_h_derivative(Hurst(h + cfg.refine_tolerance), e, prior) -
                                      posterior_h_derivative(Hurst(h - cfg.refine_tolerance), e, prior));
    EXPECT_LE(std::abs(d), variation);
  }
}

TEST(MapEstimate, ScaleEquivariance) {
  std::mt19937_64 rng(37);
  const auto e = oracle::model_energies(rng, 11, 4, 6, 0.3, 1.0);
  const BetaPrior prior(307.2, 716.8);
  const auto base = map_estimate(e, prior);
  const auto pow2 = map_estimate(e.scaled(64.0), prior);
  EXPECT_EQ(pow2.h_hat.value(), base.h_hat.value());
  EXPECT_EQ(pow2.sigma2_hat, 64.0 * base.sigma2_hat);
  for (double k : {0.01, 1000.0}) {
    const auto r = map_estimate(e.scaled(k), prior);
    EXPECT_NEAR(r.h_hat.value(), base.h_hat.value(), 1e-7);
    EXPECT_NEAR(r.sigma2_hat / (k * base.sigma2_hat), 1.0, 1e-9);
  }
}

TEST(MapEstimate, PriorPullIsMonotone) {
  // energies at H = 0.6 expectations, prior centered at 0.4
  const auto e = oracle::expected_energies(9, 3, 6, 0.6, 1.0);
  double prev = map_estimate(e, elicit_beta(0.4, 4.0)).h_hat.value();
  EXPECT_GT(prev, 0.55);
  for (double ess : {8.0, 32.0, 128.0, 512.0, 2048.0, 8192.0}) {
    const double h = map_estimate(e, elicit_beta(0.4, ess)).h_hat.value();
    EXPECT_LT(h, prev) << ess;
    EXPECT_GT(h, 0.4);
    prev = h;
  }
}

TEST(MapEstimate, BoundaryWhenNoInteriorRoot) {
  // Energies rising with j push the likelihood toward H -> 0.
  const LevelEnergies e({{2, 1.0}, {3, 4.0}, {4, 16.0}}, 6);
  const auto r = map_estimate(e, BetaPrior(1.0, 1.0));
  EXPECT_TRUE(r.diagnostics.boundary_hit);
  EXPECT_EQ(r.h_hat.value(), SolverConfig{}.h_min);
  EXPECT_EQ(r.diagnostics.root_brackets, 0);
}

TEST(MapEstimate, Errors) {
  try {
    map_estimate(LevelEnergies({{4, 0.1}}, 11), BetaPrior(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::insufficient_levels);
  }
  try {
    map_estimate(LevelEnergies({{4, 0.1}, {5, 0.0}}, 11), BetaPrior(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_input);
  }
  SolverConfig bad;
  bad.refine_tolerance = 1e-2;
  EXPECT_THROW(map_estimate(LevelEnergies({{4, 0.1}, {5, 0.05}}, 11), BetaPrior(2, 2), bad), Error);
  EXPECT_THROW(BetaPrior(0.0, 1.0), Error);
}
