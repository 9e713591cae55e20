#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace arstat {

// AR(k) family whose lag weights decay geometrically: the first two lags
// share the weight beta, every later lag is delta times the previous one.
// epsilon2 is the floor below which the smallest lag weight may not fall.
struct GeometricARSpec {
  double beta = 0.0;
  double delta = 0.0;
  int k = 0;
  double epsilon2 = 1e-8;
};

inline void validate(const GeometricARSpec& spec) {
  if (!(spec.beta > 0.0))
    throw std::invalid_argument("invalid spec: beta must be positive");
  if (!(spec.delta > 0.0 && spec.delta < 1.0))
    throw std::invalid_argument("invalid spec: delta must lie in (0, 1)");
  if (spec.k < 2)
    throw std::invalid_argument("invalid spec: k must be >= 2");
  if (!(spec.epsilon2 > 0.0))
    throw std::invalid_argument("invalid spec: epsilon2 must be positive");
  if (spec.beta * std::pow(spec.delta, spec.k - 2) < spec.epsilon2)
    throw std::invalid_argument(
        "invalid spec: smallest lag weight beta*delta^(k-2) falls below epsilon2");
}

// Signed AR coefficients b_1..b_k of the recursion
//   pi(t) = sum_i b_i pi(t-i) + u(t),
// with b_1 = b_2 = -beta and b_i = delta * b_{i-1} for i >= 3.
struct CoefficientVector {
  std::vector<double> b;

  int size() const { return static_cast<int>(b.size()); }
};

inline CoefficientVector build_coefficients(const GeometricARSpec& spec) {
  validate(spec);
  CoefficientVector out;
  out.b.reserve(spec.k);
  out.b.push_back(-spec.beta);
  out.b.push_back(-spec.beta);
  for (int i = 3; i <= spec.k; ++i) out.b.push_back(spec.delta * out.b.back());
  return out;
}

// Largest admissible order: the greatest k >= 2 with beta * delta^(k-2) >= epsilon2.
// Returns 2 when even the first delta-scaled weight falls below the floor.
inline int max_lags(double beta, double delta, double epsilon2) {
  if (!(beta > 0.0) || !(epsilon2 > 0.0))
    throw std::invalid_argument("max_lags: beta and epsilon2 must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("max_lags: delta must lie in (0, 1)");

  const auto admissible = [&](std::int64_t k) {
    return beta * std::pow(delta, static_cast<double>(k - 2)) >= epsilon2;
  };
  std::int64_t k =
      2 + static_cast<std::int64_t>(std::floor(std::log(epsilon2 / beta) / std::log(delta)));
  if (k < 2) k = 2;
  // The closed form can land one off at exact power boundaries; settle with the predicate.
  while (admissible(k + 1)) ++k;
  while (k > 2 && !admissible(k)) --k;
  if (k > std::numeric_limits<int>::max())
    throw std::overflow_error("max_lags: admissible order exceeds integer range");
  return static_cast<int>(k);
}

}  // namespace arstat
