#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "arstat/polynomial.hpp"

namespace arstat {

// The 2m x 2m determinant matrix of the stationarity criterion, block form
//
//   A_m = | C  D' |       C = m x m lower-triangular Toeplitz, first column (a_0 .. a_{m-1})
//         | D  C' |       D = m x m lower-triangular Toeplitz, first column (a_k .. a_{k-m+1})
//
// built from the monic polynomial a_0 a^k + a_1 a^{k-1} + ... + a_k.
struct SchurMatrix {
  int m = 0;
  Eigen::MatrixXd entries;
};

inline SchurMatrix build_schur_matrix(const CharPolynomial& p, int m) {
  const int k = p.degree();
  if (m < 1 || m > k) throw std::invalid_argument("build_schur_matrix: m must lie in 1..degree");
  const std::vector<double>& a = p.coeffs;

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double c = a[i - j];        // C(i,j)
      const double d = a[k - (i - j)];  // D(i,j)
      A(i, j) = c;
      A(m + j, m + i) = c;              // C' sits in the lower-right block
      A(m + i, j) = d;
      A(j, m + i) = d;                  // D' sits in the upper-right block
    }
  }
  return SchurMatrix{m, std::move(A)};
}

struct SchurReport {
  std::vector<double> determinants;       // |A_1| .. |A_k|
  bool all_positive = false;
  std::optional<int> first_failure;       // smallest m with |A_m| not positive
  std::vector<int> near_singular;         // m whose determinant is zero to working precision
};

namespace detail {

// Hadamard bound (product of row norms) used to scale the singularity threshold.
inline double hadamard_bound(const Eigen::MatrixXd& A) {
  double prod = 1.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) prod *= A.row(i).norm();
  return prod;
}

}  // namespace detail

// Stationarity verdict from positivity of all k determinants. Determinants that
// vanish to working precision count as not positive and are reported separately.
inline SchurReport schur_stationarity(const CharPolynomial& p) {
  const int k = p.degree();
  SchurReport report;
  report.determinants.reserve(k);
  report.all_positive = true;
  for (int m = 1; m <= k; ++m) {
    const SchurMatrix A = build_schur_matrix(p, m);
    const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(A.entries).determinant();
    report.determinants.push_back(det);
    const double tiny = 1e-12 * std::max(1.0, detail::hadamard_bound(A.entries));
    const bool positive = det > tiny;
    if (std::abs(det) <= tiny) report.near_singular.push_back(m);
    if (!positive && report.all_positive) {
      report.all_positive = false;
      report.first_failure = m;
    }
  }
  return report;
}

}  // namespace arstat
