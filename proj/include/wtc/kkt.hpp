#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "wtc/channel.hpp"
#include "wtc/covariance.hpp"

namespace wtc {

struct SolverConfig;

// Recovered multipliers and residuals of the first-order system
//   grad C_s(Q) - lambda I + Z = 0,  tr(Q) <= P_T,  lambda >= 0,
//   lambda (tr(Q) - P_T) = 0,        Z >= 0, Q >= 0, Q Z = 0.
struct KKTReport {
  double lambda = 0.0;           // trace-constraint multiplier, >= 0
  Eigen::MatrixXcd Z;            // PSD-constraint multiplier, lambda*I - grad
  double stationarity_residual = 0.0;  // ||grad - lambda I + [Z]_+|| / max(1, ||grad||)
  double z_min_eig = 0.0;
  double complementarity_qz = 0.0;     // ||Q Z|| / (1 + ||Q|| ||Z||)
  double trace_gap = 0.0;              // |tr(Q) - P_T| / P_T
  double primal_feas = 0.0;            // [-min eig Q]_+
  // False when H'H - G'G is negative semidefinite: the rate is identically
  // zero there and the residuals are informational only.
  bool applicable = true;
};

// lambda_hat = max(0, tr(grad C_s(Q) Q) / P_T). At a KKT point multiplying
// the stationarity equation by Q and using QZ = 0 gives grad(Q) Q = lambda Q,
// so tr(grad Q) = lambda P_T. Z_hat = lambda_hat I - grad, symmetrized.
std::pair<double, Eigen::MatrixXcd> recover_multipliers(const Covariance& q,
                                                        const ChannelPair& ch);

KKTReport kkt_residuals(const Covariance& q, const ChannelPair& ch);

bool is_kkt(const KKTReport& report, double tol = 1e-6);

struct StartOutcome {
  double objective;
  Eigen::MatrixXcd q;
  KKTReport kkt;
};

struct UniquenessReport {
  double max_pairwise_dist;   // max_{a,b} ||Q_a - Q_b||_F over final iterates
  double objective_spread;    // max - min final objective
  std::vector<StartOutcome> per_start;
  bool boundary_flagged;      // difference matrix at the PSD/indefinite boundary
};

// Empirical check of KKT-point uniqueness: run the accelerated solver from
// n_starts random feasible initializations (random A A' scaled to trace P_T)
// and measure the spread of the limits. Starts run in parallel; results are
// independent of scheduling because each start is pure in (seed, index).
UniquenessReport uniqueness_experiment(const ChannelPair& ch, double p_total,
                                       int n_starts, std::uint64_t seed,
                                       const SolverConfig& cfg, bool parallel = true);

}  // namespace wtc
