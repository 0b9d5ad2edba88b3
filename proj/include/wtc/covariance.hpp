#pragma once

#include <Eigen/Dense>

namespace wtc {

// Input covariance constrained to the feasible set
//   Q = { Q Hermitian | Q >= 0, tr(Q) <= P_T }.
// The checked constructor enforces (all relative to max(1, ||Q||_F)):
//   hermitian skew <= 1e-12, min eigenvalue >= -1e-9, tr <= p_total*(1+1e-9).
class Covariance {
 public:
  Covariance(Eigen::MatrixXcd q, double p_total);

  // Trusted path for matrices feasible by construction (projection output,
  // spectral assembly). Skips the eigenvalue check.
  static Covariance unchecked(Eigen::MatrixXcd q, double p_total);

  static Covariance zero(int n, double p_total);
  // Uniform power spread: (p_total / n) * I.
  static Covariance uniform(int n, double p_total);

  const Eigen::MatrixXcd& matrix() const { return q_; }
  double p_total() const { return p_total_; }
  int dim() const { return static_cast<int>(q_.rows()); }
  double trace() const { return q_.trace().real(); }

 private:
  struct Unchecked {};
  Covariance(Eigen::MatrixXcd q, double p_total, Unchecked);

  Eigen::MatrixXcd q_;
  double p_total_;
};

}  // namespace wtc
