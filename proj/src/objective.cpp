#include "wtc/objective.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

#include "wtc/errors.hpp"

namespace wtc {

// --- Covariance -------------------------------------------------------------

Covariance::Covariance(Eigen::MatrixXcd q, double p_total, Unchecked)
    : q_(std::move(q)), p_total_(p_total) {}

Covariance::Covariance(Eigen::MatrixXcd q, double p_total)
    : q_(std::move(q)), p_total_(p_total) {
  if (p_total_ <= 0.0) throw std::invalid_argument("Covariance: p_total must be > 0");
  if (q_.rows() != q_.cols() || q_.rows() < 1) {
    throw std::invalid_argument("Covariance: Q must be square and non-empty");
  }
  if (!q_.allFinite()) throw std::invalid_argument("Covariance: Q has non-finite entries");

  const double scale = std::max(1.0, q_.norm());
  if ((q_ - q_.adjoint()).norm() > 1e-12 * scale) {
    throw std::invalid_argument("Covariance: Q is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(q_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9 * scale) {
    throw std::invalid_argument("Covariance: Q is not PSD within tolerance");
  }
  if (q_.trace().real() > p_total_ * (1.0 + 1e-9)) {
    throw std::invalid_argument("Covariance: tr(Q) exceeds the power budget");
  }
}

Covariance Covariance::unchecked(Eigen::MatrixXcd q, double p_total) {
  return {std::move(q), p_total, Unchecked{}};
}

Covariance Covariance::zero(int n, double p_total) {
  return unchecked(Eigen::MatrixXcd::Zero(n, n), p_total);
}

Covariance Covariance::uniform(int n, double p_total) {
  return unchecked((p_total / n) * Eigen::MatrixXcd::Identity(n, n), p_total);
}

// --- Objective --------------------------------------------------------------

namespace {

void check_dims(const Eigen::MatrixXcd& q, const ChannelPair& ch) {
  if (q.rows() != ch.n_t() || q.cols() != ch.n_t()) {
    throw std::invalid_argument("Q dimensions do not match the channel's N_t");
  }
}

// ln|I + A Q A'| through the Cholesky factor of the Hermitian PD argument.
double logdet_i_plus(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& q) {
  const Eigen::Index m = a.rows();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(m, m) + a * q * a.adjoint();
  s = 0.5 * (s + s.adjoint()).eval();
  Eigen::LLT<Eigen::MatrixXcd> llt(s);
  if (llt.info() != Eigen::Success) {
    throw NumericError("log-determinant: I + A Q A' is not positive definite");
  }
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    logdet += std::log(llt.matrixLLT()(i, i).real());
  }
  return 2.0 * logdet;
}

// A'(I + A Q A')^{-1} A via a Cholesky solve against A.
Eigen::MatrixXcd gram_term(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& q) {
  const Eigen::Index m = a.rows();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(m, m) + a * q * a.adjoint();
  s = 0.5 * (s + s.adjoint()).eval();
  Eigen::LLT<Eigen::MatrixXcd> llt(s);
  if (llt.info() != Eigen::Success) {
    throw NumericError("gradient: I + A Q A' is not positive definite");
  }
  return a.adjoint() * llt.solve(a);
}

}  // namespace

double secrecy_rate(const Eigen::MatrixXcd& q, const ChannelPair& ch) {
  check_dims(q, ch);
  const double rate = logdet_i_plus(ch.H, q) - logdet_i_plus(ch.G, q);
  if (!std::isfinite(rate)) throw NumericError("secrecy_rate: non-finite result");
  return rate;
}

double secrecy_rate(const Covariance& q, const ChannelPair& ch) {
  return secrecy_rate(q.matrix(), ch);
}

Eigen::MatrixXcd secrecy_gradient(const Eigen::MatrixXcd& q, const ChannelPair& ch) {
  check_dims(q, ch);
  Eigen::MatrixXcd grad = gram_term(ch.H, q) - gram_term(ch.G, q);
  grad = 0.5 * (grad + grad.adjoint()).eval();  // kill rounding-induced skew
  return grad;
}

Eigen::MatrixXcd secrecy_gradient(const Covariance& q, const ChannelPair& ch) {
  return secrecy_gradient(q.matrix(), ch);
}

double quadratic_model(const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& q_bar,
                       double beta, const ChannelPair& ch) {
  if (beta <= 0.0) throw std::invalid_argument("quadratic_model: beta must be > 0");
  if (q_bar.rows() != q.rows() || q_bar.cols() != q.cols()) {
    throw std::invalid_argument("quadratic_model: shape mismatch");
  }
  const Eigen::MatrixXcd step = q_bar - q;
  const double linear = (secrecy_gradient(q, ch) * step).trace().real();
  return secrecy_rate(q, ch) + linear - 0.5 * beta * step.squaredNorm();
}

double lipschitz_constant(const ChannelPair& ch) {
  auto max_eig = [](const Eigen::MatrixXcd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.adjoint() * a,
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  };
  const double h = max_eig(ch.H);
  const double g = max_eig(ch.G);
  return h * h + g * g;
}

}  // namespace wtc
