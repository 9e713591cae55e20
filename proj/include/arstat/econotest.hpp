#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arstat/time_series.hpp"

namespace arstat {

struct OLSFit {
  std::vector<double> coefficients;     // fitted b_1..b_k on the lagged values
  std::optional<double> intercept;
  std::vector<double> standard_errors;  // lag coefficients first, intercept last if present
  double residual_variance = 0.0;
  int n_used = 0;
  bool rank_deficient = false;
};

namespace detail {

struct LeastSquares {
  Eigen::VectorXd solution;
  Eigen::VectorXd standard_errors;
  double residual_variance = 0.0;
  double ssr = 0.0;
  bool rank_deficient = false;
};

// Minimum-norm least squares through a complete orthogonal decomposition; the
// pseudo-inverse also supplies (X'X)^-1 diagonals for the standard errors even
// when X is rank deficient.
inline LeastSquares solve_least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(X);
  LeastSquares out;
  out.solution = cod.solve(y);
  out.rank_deficient = cod.rank() < X.cols();
  const Eigen::VectorXd residual = y - X * out.solution;
  out.ssr = residual.squaredNorm();
  const int dof = static_cast<int>(X.rows()) - static_cast<int>(X.cols());
  out.residual_variance = out.ssr / std::max(1, dof);
  const Eigen::MatrixXd pinv = cod.pseudoInverse();
  out.standard_errors.resize(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j)
    out.standard_errors(j) = std::sqrt(out.residual_variance * pinv.row(j).squaredNorm());
  return out;
}

}  // namespace detail

// Least-squares autoregression of the series on its first k lags.
inline OLSFit fit_ar(const TimeSeries& series, int k, bool with_intercept) {
  if (k < 1) throw std::invalid_argument("fit_ar: k must be >= 1");
  const int n = series.size();
  if (n <= k + 2) throw std::invalid_argument("fit_ar: series too short for the requested order");

  const int rows = n - k;
  const int cols = k + (with_intercept ? 1 : 0);
  Eigen::MatrixXd X(rows, cols);
  Eigen::VectorXd y(rows);
  for (int t = k; t < n; ++t) {
    y(t - k) = series.values[t];
    for (int i = 0; i < k; ++i) X(t - k, i) = series.values[t - 1 - i];
    if (with_intercept) X(t - k, k) = 1.0;
  }

  const detail::LeastSquares ls = detail::solve_least_squares(X, y);
  OLSFit fit;
  fit.n_used = rows;
  fit.rank_deficient = ls.rank_deficient;
  fit.residual_variance = ls.residual_variance;
  fit.coefficients.assign(ls.solution.data(), ls.solution.data() + k);
  fit.standard_errors.assign(ls.standard_errors.data(), ls.standard_errors.data() + cols);
  if (with_intercept) fit.intercept = ls.solution(k);
  return fit;
}

enum class StationarityCategory { non_stationary = 0, weak = 1, moderate = 2, highly_strong = 3 };

inline const char* to_string(StationarityCategory c) {
  switch (c) {
    case StationarityCategory::highly_strong: return "highly-strong";
    case StationarityCategory::moderate: return "moderate";
    case StationarityCategory::weak: return "weak";
    default: return "non-stationary";
  }
}

struct CriticalValues {
  double cv1 = -3.43;   // constant-included Dickey-Fuller distribution, large n
  double cv5 = -2.86;
  double cv10 = -2.57;
};

// Category boundaries sit exactly on the critical values.
inline StationarityCategory category_from_statistic(double statistic,
                                                    const CriticalValues& cv = {}) {
  if (statistic <= cv.cv1) return StationarityCategory::highly_strong;
  if (statistic <= cv.cv5) return StationarityCategory::moderate;
  if (statistic <= cv.cv10) return StationarityCategory::weak;
  return StationarityCategory::non_stationary;
}

struct ADFResult {
  double statistic = 0.0;
  int lags_used = 0;
  StationarityCategory category = StationarityCategory::non_stationary;
  CriticalValues critical_values;
  int n_used = 0;
};

// Augmented Dickey-Fuller test with a constant:
//   d pi(t) = c + gamma pi(t-1) + sum_{j=1..p} phi_j d pi(t-j) + e(t).
// The lag order p is chosen over 0..max_lags by AIC on a common sample (all
// candidates see the max_lags-trimmed observations), then the winner is refit
// on its own full sample. The statistic is the t-ratio of gamma.
inline ADFResult adf_test(const TimeSeries& series, int max_lags) {
  if (max_lags < 0) throw std::invalid_argument("adf_test: max_lags must be >= 0");
  const int n = series.size();
  if (n < 25 + max_lags)
    throw std::invalid_argument("adf_test: insufficient data (need at least 25 + max_lags)");

  const std::vector<double>& y = series.values;
  std::vector<double> dy(n - 1);
  for (int i = 0; i + 1 < n; ++i) dy[i] = y[i + 1] - y[i];

  const auto regress = [&](int p, int first_row) {
    const int rows = static_cast<int>(dy.size()) - first_row;
    Eigen::MatrixXd X(rows, p + 2);
    Eigen::VectorXd rhs(rows);
    for (int j = first_row; j < static_cast<int>(dy.size()); ++j) {
      const int r = j - first_row;
      rhs(r) = dy[j];
      X(r, 0) = 1.0;
      X(r, 1) = y[j];
      for (int i = 1; i <= p; ++i) X(r, 1 + i) = dy[j - i];
    }
    return detail::solve_least_squares(X, rhs);
  };

  int best_p = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int p = 0; p <= max_lags; ++p) {
    const detail::LeastSquares ls = regress(p, max_lags);
    const int rows = static_cast<int>(dy.size()) - max_lags;
    const double aic = rows * std::log(std::max(ls.ssr, 1e-300) / rows) + 2.0 * (p + 2);
    if (aic < best_aic) {
      best_aic = aic;
      best_p = p;
    }
  }

  const detail::LeastSquares ls = regress(best_p, best_p);
  ADFResult out;
  out.lags_used = best_p;
  out.n_used = static_cast<int>(dy.size()) - best_p;
  const double se = ls.standard_errors(1);
  out.statistic = se > 0.0 ? ls.solution(1) / se : std::numeric_limits<double>::infinity();
  out.category = category_from_statistic(out.statistic, out.critical_values);
  return out;
}

inline double rmse(const TimeSeries& actual, const TimeSeries& predicted) {
  if (actual.size() != predicted.size())
    throw std::invalid_argument("rmse: series lengths differ");
  if (actual.empty()) throw std::invalid_argument("rmse: series are empty");
  double sum = 0.0;
  for (int i = 0; i < actual.size(); ++i) {
    const double d = actual.values[i] - predicted.values[i];
    sum += d * d;
  }
  return std::sqrt(sum / actual.size());
}

}  // namespace arstat
