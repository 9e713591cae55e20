#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "arstat/model.hpp"

namespace arstat {

// Monic polynomial in descending powers: coeffs[0] = 1 multiplies a^degree.
// For a GeometricARSpec this is
//   a^k + beta a^{k-1} + beta a^{k-2} + beta*delta a^{k-3} + ... + beta*delta^{k-2}.
struct CharPolynomial {
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline CharPolynomial make_monic_polynomial(std::vector<double> coeffs) {
  if (coeffs.size() < 2)
    throw std::invalid_argument("polynomial must have degree >= 1");
  if (coeffs.front() != 1.0)
    throw std::invalid_argument("polynomial must be monic (leading coefficient 1)");
  return CharPolynomial{std::move(coeffs)};
}

inline CharPolynomial char_polynomial(const GeometricARSpec& spec) {
  validate(spec);
  std::vector<double> a;
  a.reserve(spec.k + 1);
  a.push_back(1.0);
  a.push_back(spec.beta);
  a.push_back(spec.beta);
  for (int j = 3; j <= spec.k; ++j) a.push_back(spec.delta * a.back());
  return CharPolynomial{std::move(a)};
}

inline std::complex<double> evaluate(const CharPolynomial& p, std::complex<double> z) {
  std::complex<double> acc = p.coeffs.front();
  for (std::size_t i = 1; i < p.coeffs.size(); ++i) acc = acc * z + p.coeffs[i];
  return acc;
}

}  // namespace arstat
