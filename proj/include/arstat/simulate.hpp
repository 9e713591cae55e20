#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "arstat/rng.hpp"
#include "arstat/time_series.hpp"

namespace arstat {

enum class Innovation { gaussian, uniform };

inline const char* to_string(Innovation innovation) {
  return innovation == Innovation::gaussian ? "gaussian" : "uniform";
}

struct SimulationConfig {
  std::vector<double> coefficients;    // b_1..b_k of pi(t) = sum b_i pi(t-i) + u(t)
  int n_steps = 0;
  int burn_in = 0;
  double innovation_sd = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> initial_values;  // chronological, oldest first; empty = zeros
  Innovation innovation = Innovation::gaussian;
  double explosion_guard = 1e12;       // |pi| beyond this truncates the run
};

struct SimulationResult {
  TimeSeries series;
  bool explosive = false;  // guard tripped; series holds what was emitted before
};

inline SimulationResult simulate(const SimulationConfig& config) {
  const int k = static_cast<int>(config.coefficients.size());
  if (k < 1) throw std::invalid_argument("simulate: coefficient vector must be nonempty");
  if (config.n_steps < 1) throw std::invalid_argument("simulate: n_steps must be >= 1");
  if (config.burn_in < 0) throw std::invalid_argument("simulate: burn_in must be >= 0");
  if (!(config.innovation_sd > 0.0))
    throw std::invalid_argument("simulate: innovation_sd must be positive");
  if (!config.initial_values.empty() && static_cast<int>(config.initial_values.size()) != k)
    throw std::invalid_argument("simulate: initial_values must have one entry per coefficient");

  // lags[0] is pi(t-1), lags[k-1] is pi(t-k).
  std::vector<double> lags(k, 0.0);
  if (!config.initial_values.empty())
    for (int i = 0; i < k; ++i) lags[i] = config.initial_values[k - 1 - i];

  NoiseGenerator noise(config.seed);
  SimulationResult out;
  out.series.values.reserve(config.n_steps);
  const int total = config.burn_in + config.n_steps;
  for (int t = 0; t < total; ++t) {
    double x = 0.0;
    for (int i = 0; i < k; ++i) x += config.coefficients[i] * lags[i];
    const double z = config.innovation == Innovation::gaussian ? noise.standard_normal()
                                                               : noise.uniform_symmetric();
    x += config.innovation_sd * z;
    if (std::abs(x) > config.explosion_guard) {
      out.explosive = true;
      break;
    }
    for (int i = k - 1; i > 0; --i) lags[i] = lags[i - 1];
    lags[0] = x;
    if (t >= config.burn_in) out.series.values.push_back(x);
  }
  return out;
}

// Deterministic multi-step recursion with the innovation at its mean zero.
inline TimeSeries forecast(const TimeSeries& history, const std::vector<double>& coefficients,
                           int horizon) {
  const int k = static_cast<int>(coefficients.size());
  if (k < 1) throw std::invalid_argument("forecast: coefficient vector must be nonempty");
  if (horizon < 1) throw std::invalid_argument("forecast: horizon must be >= 1");
  if (history.size() < k)
    throw std::invalid_argument("forecast: insufficient history (need at least k values)");

  std::vector<double> lags(k);
  for (int i = 0; i < k; ++i) lags[i] = history.values[history.size() - 1 - i];

  TimeSeries out;
  out.values.reserve(horizon);
  for (int h = 0; h < horizon; ++h) {
    double x = 0.0;
    for (int i = 0; i < k; ++i) x += coefficients[i] * lags[i];
    for (int i = k - 1; i > 0; --i) lags[i] = lags[i - 1];
    lags[0] = x;
    out.values.push_back(x);
  }
  return out;
}

}  // namespace arstat
