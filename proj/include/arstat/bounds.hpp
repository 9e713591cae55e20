#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "arstat/model.hpp"
#include "arstat/polynomial.hpp"
#include "arstat/schur.hpp"

namespace arstat {

namespace detail {

inline Eigen::MatrixXd lower_ones(int m) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) L(i, j) = 1.0;
  return L;
}

// Geometric coefficient ladder at unit scale: (1, 1, 1, delta, ..., delta^{k-2}).
// Scaling it by beta gives back the characteristic polynomial coefficients, so the
// criterion matrix built from it equals V = v + R of the decomposition
// A_m = V beta + J (1 - beta).
inline CharPolynomial unit_scale_polynomial(double delta, int k) {
  std::vector<double> a;
  a.reserve(k + 1);
  a.push_back(1.0);
  a.push_back(1.0);
  a.push_back(1.0);
  for (int j = 3; j <= k; ++j) a.push_back(delta * a.back());
  return CharPolynomial{std::move(a)};
}

}  // namespace detail

// v = [[L, L'], [L, L']] with L the m x m lower-triangular all-ones matrix.
// Its spectrum is {m+1} u {1 x (m-1)} u {0 x m}.
inline Eigen::MatrixXd structure_v(int m) {
  if (m < 1) throw std::invalid_argument("structure_v: m must be >= 1");
  const Eigen::MatrixXd L = detail::lower_ones(m);
  Eigen::MatrixXd v(2 * m, 2 * m);
  v.topLeftCorner(m, m) = L;
  v.topRightCorner(m, m) = L.transpose();
  v.bottomLeftCorner(m, m) = L;
  v.bottomRightCorner(m, m) = L.transpose();
  return v;
}

struct StructureMatrices {
  int m = 0;
  Eigen::MatrixXd v;
  Eigen::MatrixXd R;  // perturbation with entries of the form delta^p - 1, all in (-1, 0]
  Eigen::MatrixXd J;  // identity
};

// Assembles v, R, J such that A_m = (v + R) beta + J (1 - beta) exactly.
// R is recovered from that identity evaluated at beta = 1, which makes it
// independent of beta by construction.
inline StructureMatrices build_structure_matrices(const GeometricARSpec& spec, int m) {
  validate(spec);
  if (m < 1 || m > spec.k)
    throw std::invalid_argument("build_structure_matrices: m must lie in 1..k");
  StructureMatrices out;
  out.m = m;
  out.v = structure_v(m);
  const SchurMatrix V = build_schur_matrix(detail::unit_scale_polynomial(spec.delta, spec.k), m);
  out.R = V.entries - out.v;
  out.J = Eigen::MatrixXd::Identity(2 * m, 2 * m);
  return out;
}

/// Frobenius norm of the perturbation matrix R.
inline double norm_K(const GeometricARSpec& spec, int m) {
  return build_structure_matrices(spec, m).R.norm();
}

// Closed form of ||R||_F, summed lag by lag over the two distinct blocks.
// The C-side block contributes (delta^{q-2} - 1)^2 at lag q >= 3 with
// multiplicity m - q; the D-side block contributes (delta^{k-q-2} - 1)^2 at
// lag q = 0..min(m-1, k-3) with multiplicity m - q. Both blocks enter twice.
// At m = k this collapses to sqrt(2k * sum_{p=1}^{k-2} (delta^p - 1)^2), and
// at m = 1 to sqrt(2) * (1 - delta^{k-2}).
inline double closed_form_K(double delta, int k, int m) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("closed_form_K: delta in (0,1)");
  if (k < 2 || m < 1 || m > k) throw std::invalid_argument("closed_form_K: need k >= 2, 1 <= m <= k");
  double sum = 0.0;
  for (int q = 3; q <= m - 1; ++q) {
    const double t = std::pow(delta, q - 2) - 1.0;
    sum += (m - q) * t * t;
  }
  const int qmax = std::min(m - 1, k - 3);
  for (int q = 0; q <= qmax; ++q) {
    const double t = std::pow(delta, k - q - 2) - 1.0;
    sum += (m - q) * t * t;
  }
  return std::sqrt(2.0 * sum);
}

// Deterministic eigenvector matrix X of v with unit-Euclidean-norm columns:
// column 1 spans the eigenvalue m+1, columns 2..m carry a Helmert basis of the
// eigenvalue-1 space, and the zero eigenspace gets an orthonormal basis via a
// sign-fixed Householder QR. The convention pins the conditioning number so
// reported kappa values are reproducible.
inline Eigen::MatrixXd eigenvector_matrix(int m) {
  if (m < 1) throw std::invalid_argument("eigenvector_matrix: m must be >= 1");
  const int n = 2 * m;
  const Eigen::MatrixXd L = detail::lower_ones(m);
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::VectorXd y = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(double(m)));
  X.col(0).head(m) = y;
  X.col(0).tail(m) = y;
  X.col(0) *= inv_sqrt2;

  for (int j = 1; j < m; ++j) {
    const double c = 1.0 / std::sqrt(double(j) * (j + 1.0));
    Eigen::VectorXd h = Eigen::VectorXd::Zero(m);
    h.head(j).setConstant(c);
    h(j) = -j * c;
    X.col(j).head(m) = h;
    X.col(j).tail(m) = h;
    X.col(j) *= inv_sqrt2;
  }

  // Null space of v: [x1; x1 + z] with (L + L') x1 = -L' z, z free.
  const Eigen::MatrixXd M = L + L.transpose();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  Eigen::MatrixXd U(n, m);
  for (int j = 0; j < m; ++j) {
    const Eigen::VectorXd x1 = -lu.solve(L.transpose().col(j));
    U.col(j).head(m) = x1;
    U.col(j).tail(m) = x1;
    U(m + j, j) += 1.0;
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(U);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
  const Eigen::MatrixXd Rfac = qr.matrixQR().topRows(m);
  for (int j = 0; j < m; ++j)
    if (Rfac(j, j) < 0.0) Q.col(j) = -Q.col(j);
  X.rightCols(m) = Q;
  return X;
}

/// Spectral-norm condition number of the eigenvector matrix of v; B_1 = 1.
inline double conditioning_B(int m) {
  const Eigen::MatrixXd X = eigenvector_matrix(m);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

/// Perturbation radius kappa_m = K_m * B_m.
inline double kappa(const GeometricARSpec& spec, int m) {
  return norm_K(spec, m) * conditioning_B(m);
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct PerturbationBound {
  int m = 0;
  double K = 0.0;
  double B = 1.0;
  double kappa = 0.0;
  Interval top;     // i = 1
  Interval middle;  // i = 2..m
  Interval bottom;  // i = m+1..2m
};

// Interval brackets for the three eigenvalue groups of A_m at a given radius:
//   [(m - kappa) beta + 1, (m + kappa) beta + 1]
//   [1 - kappa beta,       1 + kappa beta]
//   [1 - (kappa + 1) beta, 1 + (kappa - 1) beta]
inline PerturbationBound brackets_from(double kappa_value, double beta, int m) {
  PerturbationBound b;
  b.m = m;
  b.kappa = kappa_value;
  b.top = {(m - kappa_value) * beta + 1.0, (m + kappa_value) * beta + 1.0};
  b.middle = {1.0 - kappa_value * beta, 1.0 + kappa_value * beta};
  b.bottom = {1.0 - (kappa_value + 1.0) * beta, 1.0 + (kappa_value - 1.0) * beta};
  return b;
}

inline PerturbationBound eigenvalue_brackets(const GeometricARSpec& spec, int m) {
  validate(spec);
  if (m < 1 || m > spec.k) throw std::invalid_argument("eigenvalue_brackets: m must lie in 1..k");
  const double K = norm_K(spec, m);
  const double B = conditioning_B(m);
  PerturbationBound b = brackets_from(K * B, spec.beta, m);
  b.K = K;
  b.B = B;
  return b;
}

struct DeltaLowerBound {
  bool vacuous = false;           // inner expression not positive: no constraint on delta
  double value = 0.0;             // meaningful only when !vacuous
  bool below_one = false;
};

// Lower bound on delta at fixed beta: {1 + (beta - 1) / (beta sqrt(2))}^{1/(k-2)}.
// Vacuous for beta <= 1/(1 + sqrt(2)).
inline DeltaLowerBound delta_lower_bound(double beta, int k) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("delta_lower_bound: beta must lie in (0, 1)");
  if (k < 3) throw std::invalid_argument("delta_lower_bound: k must be >= 3");
  DeltaLowerBound out;
  const double inner = 1.0 + (beta - 1.0) / (beta * std::sqrt(2.0));
  if (inner <= 0.0) {
    out.vacuous = true;
    return out;
  }
  out.value = std::pow(inner, 1.0 / (k - 2));
  out.below_one = out.value < 1.0;
  return out;
}

struct StationarityBound {
  double kappa_k = 0.0;
  double beta_upper = 0.0;                  // 1 / (kappa_k + 1)
  double beta_lower = 0.0;                  // -1 / (k + kappa_k)
  std::optional<DeltaLowerBound> delta_lower;  // absent for k = 2
};

inline StationarityBound theorem_bound(const GeometricARSpec& spec) {
  validate(spec);
  StationarityBound out;
  out.kappa_k = kappa(spec, spec.k);
  out.beta_upper = 1.0 / (out.kappa_k + 1.0);
  out.beta_lower = -1.0 / (spec.k + out.kappa_k);
  if (spec.k >= 3 && spec.beta < 1.0) out.delta_lower = delta_lower_bound(spec.beta, spec.k);
  return out;
}

struct CoefficientSumReport {
  double magnitude_sum = 0.0;   // beta (2 - delta - delta^{k-1}) / (1 - delta)
  double signed_sum = 0.0;      // sum of the stored coefficients b_i (= -magnitude_sum)
  double bound_side = 0.0;      // magnitude sum evaluated at beta = 1/(kappa_k + 1)
  bool magnitude_lt_one = false;
  bool signed_lt_one = false;
  bool within_bound_side = false;  // magnitude_sum < bound_side, equivalent to beta < beta_upper
};

// Reports both sides of the coefficient-sum inequality. The magnitude sum is
// the geometric series of the lag weights; the stored model coefficients are
// its negation, so their sum is below 1 for every valid spec. The magnitude
// sum itself can exceed 1 inside the beta bound when k is small (k = 2 has
// kappa = 0, bound 1, and magnitude sum 2 beta).
inline CoefficientSumReport coefficient_sum_check(const GeometricARSpec& spec) {
  validate(spec);
  CoefficientSumReport out;
  const double factor =
      (2.0 - spec.delta - std::pow(spec.delta, spec.k - 1)) / (1.0 - spec.delta);
  out.magnitude_sum = spec.beta * factor;
  out.signed_sum = -out.magnitude_sum;
  out.bound_side = factor / (kappa(spec, spec.k) + 1.0);
  out.magnitude_lt_one = out.magnitude_sum < 1.0;
  out.signed_lt_one = out.signed_sum < 1.0;
  out.within_bound_side = out.magnitude_sum < out.bound_side;
  return out;
}

}  // namespace arstat
