#pragma once

#include <Eigen/Dense>

#include "wtc/covariance.hpp"

namespace wtc {

// Hermitian eigendecomposition X = U diag(eigenvalues) U' with eigenvalues
// sorted descending and U unitary.
struct EigenSystem {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

EigenSystem decompose_hermitian(const Eigen::MatrixXcd& x);

// Water level c for the shrinkage [x - c]_+ under budget p_total:
// 0 when sum_i [x_i]_+ <= p_total (trace constraint inactive), otherwise the
// unique c > 0 with sum_i [x_i - c]_+ = p_total, found by the closed-form
// sorted-prefix scan (no iterative root finding).
double water_level(const Eigen::VectorXd& x, double p_total);

// Euclidean (Frobenius) projection onto {Q >= 0, tr(Q) <= p_total}:
//   Pi(X) = U diag([x - c]_+) U'
// where X = U diag(x) U' after hermitizing the input.
Covariance project(const Eigen::MatrixXcd& x, double p_total);

}  // namespace wtc
