#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "arstat/econotest.hpp"
#include "arstat/ingest.hpp"
#include "arstat/simulate.hpp"
#include "arstat/time_series.hpp"

namespace arstat {

// Fit-and-forecast comparison on one series: an unconstrained AR(k) with
// intercept against the one-parameter geometric-ladder model, both fitted on
// the leading window and scored by RMSE over the following horizon.
struct AppendixConfig {
  int window = 100;
  int horizon = 40;
  int k = 5;
  double delta = 0.5;
};

struct AppendixReport {
  double diff_ar1_coefficient = 0.0;  // AR(1) coefficient of the first differences
  bool diff_ar1_below_one = false;
  OLSFit unconstrained;
  double geometric_scale = 0.0;       // s in b ~ s * (1, 1, delta, ..., delta^{k-2})
  std::vector<double> geometric_coefficients;
  double rmse_unconstrained = 0.0;
  double rmse_geometric = 0.0;
  double ratio = 0.0;                 // geometric / unconstrained
  TimeSeries actual;
  TimeSeries forecast_unconstrained;
  TimeSeries forecast_geometric;
};

namespace detail {

inline TimeSeries forecast_with_intercept(const TimeSeries& history,
                                          const std::vector<double>& coefficients,
                                          double intercept, int horizon) {
  const int k = static_cast<int>(coefficients.size());
  std::vector<double> lags(k);
  for (int i = 0; i < k; ++i) lags[i] = history.values[history.size() - 1 - i];
  TimeSeries out;
  out.values.reserve(horizon);
  for (int h = 0; h < horizon; ++h) {
    double x = intercept;
    for (int i = 0; i < k; ++i) x += coefficients[i] * lags[i];
    for (int i = k - 1; i > 0; --i) lags[i] = lags[i - 1];
    lags[0] = x;
    out.values.push_back(x);
  }
  return out;
}

}  // namespace detail

inline AppendixReport run_appendix(const TimeSeries& series, const AppendixConfig& config) {
  if (config.horizon < 1) throw std::invalid_argument("run_appendix: horizon must be >= 1");
  if (config.k < 1) throw std::invalid_argument("run_appendix: k must be >= 1");
  if (!(config.delta > 0.0 && config.delta < 1.0))
    throw std::invalid_argument("run_appendix: delta must lie in (0, 1)");
  if (config.window <= config.k + 3)
    throw std::invalid_argument("run_appendix: window too short for the requested order");
  if (series.size() < config.window + config.horizon)
    throw std::invalid_argument("run_appendix: insufficient data for window plus horizon");

  TimeSeries fit_window;
  fit_window.values.assign(series.values.begin(), series.values.begin() + config.window);
  AppendixReport report;
  report.actual.values.assign(series.values.begin() + config.window,
                              series.values.begin() + config.window + config.horizon);

  const OLSFit diff_fit = fit_ar(first_difference(fit_window), 1, true);
  report.diff_ar1_coefficient = diff_fit.coefficients[0];
  report.diff_ar1_below_one = std::abs(diff_fit.coefficients[0]) < 1.0;

  report.unconstrained = fit_ar(fit_window, config.k, true);

  // One-parameter fit: regress pi(t) on the composite z(t) = sum_i g_i pi(t-i)
  // with the unit ladder g = (1, 1, delta, ..., delta^{k-2}).
  std::vector<double> ladder(config.k, 1.0);
  for (int i = 2; i < config.k; ++i) ladder[i] = config.delta * ladder[i - 1];
  double zz = 0.0, zy = 0.0;
  for (int t = config.k; t < config.window; ++t) {
    double z = 0.0;
    for (int i = 0; i < config.k; ++i) z += ladder[i] * fit_window.values[t - 1 - i];
    zz += z * z;
    zy += z * fit_window.values[t];
  }
  report.geometric_scale = zz > 0.0 ? zy / zz : 0.0;
  report.geometric_coefficients.resize(config.k);
  for (int i = 0; i < config.k; ++i)
    report.geometric_coefficients[i] = report.geometric_scale * ladder[i];

  report.forecast_unconstrained = detail::forecast_with_intercept(
      fit_window, report.unconstrained.coefficients,
      report.unconstrained.intercept.value_or(0.0), config.horizon);
  report.forecast_geometric =
      forecast(fit_window, report.geometric_coefficients, config.horizon);

  report.rmse_unconstrained = rmse(report.actual, report.forecast_unconstrained);
  report.rmse_geometric = rmse(report.actual, report.forecast_geometric);
  report.ratio = report.rmse_unconstrained > 0.0
                     ? report.rmse_geometric / report.rmse_unconstrained
                     : 1.0;
  return report;
}

}  // namespace arstat
