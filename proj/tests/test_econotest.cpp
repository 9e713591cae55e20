#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>

#include "arstat/econotest.hpp"
#include "arstat/grid.hpp"
#include "arstat/model.hpp"
#include "arstat/simulate.hpp"

using namespace arstat;

namespace {

TimeSeries simulate_ar(const std::vector<double>& coefficients, int n, std::uint64_t seed,
                       double sd = 1.0) {
  SimulationConfig config;
  config.coefficients = coefficients;
  config.n_steps = n;
  config.burn_in = 10 * static_cast<int>(coefficients.size());
  config.innovation_sd = sd;
  config.seed = seed;
  return simulate(config).series;
}

}  // namespace

TEST_CASE("noiseless recursion is identified exactly") {
  TimeSeries series;
  double x = 1.0;
  for (int t = 0; t < 40; ++t) {
    series.values.push_back(x);
    x *= 0.5;
  }
  const OLSFit fit = fit_ar(series, 1, false);
  REQUIRE_THAT(fit.coefficients[0], Catch::Matchers::WithinAbs(0.5, 1e-10));
  REQUIRE(fit.n_used == 39);
}

TEST_CASE("OLS is consistent for a stationary AR(1)") {
  const TimeSeries series = simulate_ar({0.5}, 2000, 1234);
  const OLSFit fit = fit_ar(series, 1, true);
  REQUIRE(fit.coefficients[0] > 0.45);
  REQUIRE(fit.coefficients[0] < 0.55);
  REQUIRE(fit.standard_errors.size() == 2);
  REQUIRE(fit.residual_variance > 0.8);
  REQUIRE(fit.residual_variance < 1.2);
}

TEST_CASE("geometric spec coefficients are recovered from a long sample") {
  const std::vector<double> truth = build_coefficients({0.3, 0.5, 5, 1e-8}).b;
  const TimeSeries series = simulate_ar(truth, 5000, 8675309);
  const OLSFit fit = fit_ar(series, 5, true);
  for (int i = 0; i < 5; ++i)
    REQUIRE_THAT(fit.coefficients[i], Catch::Matchers::WithinAbs(truth[i], 0.05));
}

TEST_CASE("normal-equation residual orthogonality") {
  const TimeSeries series = simulate_ar({-0.4, -0.2, 0.1}, 400, 777);
  const int k = 3;
  const OLSFit fit = fit_ar(series, k, true);
  const int rows = series.size() - k;
  Eigen::MatrixXd X(rows, k + 1);
  Eigen::VectorXd y(rows);
  for (int t = k; t < series.size(); ++t) {
    y(t - k) = series.values[t];
    for (int i = 0; i < k; ++i) X(t - k, i) = series.values[t - 1 - i];
    X(t - k, k) = 1.0;
  }
  Eigen::VectorXd b(k + 1);
  for (int i = 0; i < k; ++i) b(i) = fit.coefficients[i];
  b(k) = *fit.intercept;
  const Eigen::VectorXd gram_residual = X.transpose() * (y - X * b);
  const double scale = std::max(1.0, (X.transpose() * y).cwiseAbs().maxCoeff());
  REQUIRE(gram_residual.cwiseAbs().maxCoeff() <= 1e-8 * scale);
}

TEST_CASE("constant series is flagged rank deficient") {
  TimeSeries series;
  series.values.assign(60, 3.0);
  const OLSFit fit = fit_ar(series, 2, true);
  REQUIRE(fit.rank_deficient);
  REQUIRE(fit.coefficients.size() == 2);
}

TEST_CASE("category mapping boundaries sit exactly on the critical values") {
  REQUIRE(category_from_statistic(-3.43) == StationarityCategory::highly_strong);
  REQUIRE(category_from_statistic(-3.4299) == StationarityCategory::moderate);
  REQUIRE(category_from_statistic(-2.86) == StationarityCategory::moderate);
  REQUIRE(category_from_statistic(-2.8599) == StationarityCategory::weak);
  REQUIRE(category_from_statistic(-2.57) == StationarityCategory::weak);
  REQUIRE(category_from_statistic(-2.5699) == StationarityCategory::non_stationary);
  const CriticalValues cv;
  REQUIRE(cv.cv1 < cv.cv5);
  REQUIRE(cv.cv5 < cv.cv10);
}

TEST_CASE("ADF statistic is invariant under scaling") {
  const TimeSeries series = simulate_ar({0.6}, 300, 4321);
  TimeSeries scaled = series;
  for (double& x : scaled.values) x *= 1000.0;
  const ADFResult a = adf_test(series, 6);
  const ADFResult b = adf_test(scaled, 6);
  REQUIRE(a.lags_used == b.lags_used);
  REQUIRE_THAT(b.statistic, Catch::Matchers::WithinAbs(a.statistic, 1e-9));
}

TEST_CASE("ADF size under the unit-root null") {
  int non_rejections = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const TimeSeries walk = simulate_ar({1.0}, 500, replication_seed(60000, rep));
    if (adf_test(walk, 5).category == StationarityCategory::non_stationary) ++non_rejections;
  }
  REQUIRE(non_rejections >= 45);
}

TEST_CASE("ADF power far from the null") {
  int strong = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const TimeSeries noise = simulate_ar({0.0}, 500, replication_seed(61000, rep));
    if (adf_test(noise, 5).category == StationarityCategory::highly_strong) ++strong;
  }
  REQUIRE(strong >= 45);
}

TEST_CASE("grid-protocol cells match the tabulated categories") {
  GridConfig config;
  config.k = 5;
  config.replications = 20;
  config.seed = 4200;
  SECTION("tiny beta is highly strong") {
    config.betas = {0.0001};
    config.deltas = {0.5};
    const GridRow row = run_grid(config)[0];
    REQUIRE(row.majority == StationarityCategory::highly_strong);
  }
  SECTION("beta=0.4 delta=0.5 is non-stationary") {
    config.betas = {0.4};
    config.deltas = {0.5};
    const GridRow row = run_grid(config)[0];
    REQUIRE(row.majority == StationarityCategory::non_stationary);
  }
}

TEST_CASE("insufficient data for the ADF regression throws") {
  TimeSeries series;
  series.values.assign(20, 0.0);
  REQUIRE_THROWS_AS(adf_test(series, 4), std::invalid_argument);
}

TEST_CASE("rmse") {
  TimeSeries a, b;
  a.values = {1.0, 2.0, 3.0};
  REQUIRE(rmse(a, a) == 0.0);
  a.values = {0.0, 0.0};
  b.values = {3.0, 4.0};
  REQUIRE_THAT(rmse(a, b), Catch::Matchers::WithinAbs(3.5355339059327378, 1e-12));
  b.values = {1.0};
  REQUIRE_THROWS_AS(rmse(a, b), std::invalid_argument);
}
