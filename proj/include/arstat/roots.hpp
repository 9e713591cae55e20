#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "arstat/polynomial.hpp"

namespace arstat {

struct RootSet {
  std::vector<std::complex<double>> roots;
  double max_modulus = 0.0;
};

// All degree-many roots with multiplicity, as eigenvalues of the companion
// matrix. Each root is checked against the polynomial residual
//   |p(r)| <= 1e-8 * (1 + sum |a_j|) * max(1, |r|)^degree.
inline RootSet compute_roots(const CharPolynomial& p) {
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("compute_roots: degree must be >= 1");

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  if (n > 1) companion.diagonal(-1).setOnes();
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeffs[n - i];

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "compute_roots: eigenvalue iteration failed for polynomial (";
    for (double c : p.coeffs) msg << c << " ";
    msg << ")";
    throw std::runtime_error(msg.str());
  }

  RootSet out;
  out.roots.reserve(n);
  double coeff_mass = 0.0;
  for (double c : p.coeffs) coeff_mass += std::abs(c);
  for (int i = 0; i < n; ++i) {
    const std::complex<double> r = solver.eigenvalues()[i];
    const double scale = std::pow(std::max(1.0, std::abs(r)), n);
    if (std::abs(evaluate(p, r)) > 1e-8 * (1.0 + coeff_mass) * scale)
      throw std::runtime_error("compute_roots: root residual check failed");
    out.roots.push_back(r);
    out.max_modulus = std::max(out.max_modulus, std::abs(r));
  }
  return out;
}

struct RootVerdict {
  bool stationary = false;
  bool borderline = false;   // |max_modulus - 1| <= tol
  double max_modulus = 0.0;
  double margin = 0.0;       // 1 - max_modulus
};

inline RootVerdict is_stationary_by_roots(const CharPolynomial& p, double tol = 1e-9) {
  const RootSet rs = compute_roots(p);
  RootVerdict v;
  v.max_modulus = rs.max_modulus;
  v.margin = 1.0 - rs.max_modulus;
  v.borderline = std::abs(rs.max_modulus - 1.0) <= tol;
  v.stationary = rs.max_modulus < 1.0 - tol;
  return v;
}

}  // namespace arstat
