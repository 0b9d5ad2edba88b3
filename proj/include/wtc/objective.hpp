#pragma once

#include <Eigen/Dense>

#include "wtc/channel.hpp"
#include "wtc/covariance.hpp"

namespace wtc {

// Secrecy rate in nats,
//   C_s(Q) = ln|I + H Q H'| - ln|I + G Q G'|,
// evaluated through Cholesky factors of the two Hermitian PD matrices.
double secrecy_rate(const Eigen::MatrixXcd& q, const ChannelPair& ch);
double secrecy_rate(const Covariance& q, const ChannelPair& ch);

// grad C_s(Q) = H'(I + H Q H')^{-1} H - G'(I + G Q G')^{-1} G, symmetrized.
// For Hermitian D the directional derivative of C_s at Q along D equals
// Re tr(grad * D); the trace convention carries no factor of 2.
Eigen::MatrixXcd secrecy_gradient(const Eigen::MatrixXcd& q, const ChannelPair& ch);
Eigen::MatrixXcd secrecy_gradient(const Covariance& q, const ChannelPair& ch);

// Quadratic surrogate used by the backtracking line search:
//   mu_beta(Q; Qbar) = C_s(Q) + tr(grad C_s(Q) (Qbar - Q)) - beta/2 ||Qbar - Q||_F^2.
double quadratic_model(const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& q_bar,
                       double beta, const ChannelPair& ch);

// Lipschitz constant of grad C_s on the feasible set:
//   L = sigma_max(H'H)^2 + sigma_max(G'G)^2.
double lipschitz_constant(const ChannelPair& ch);

}  // namespace wtc
