#include "wtc/kkt.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

#include "wtc/objective.hpp"
#include "wtc/projection.hpp"
#include "wtc/rng.hpp"
#include "wtc/solver.hpp"

namespace wtc {

std::pair<double, Eigen::MatrixXcd> recover_multipliers(const Covariance& q,
                                                        const ChannelPair& ch) {
  const Eigen::MatrixXcd grad = secrecy_gradient(q, ch);
  const double lambda =
      std::max(0.0, (grad * q.matrix()).trace().real() / q.p_total());
  Eigen::MatrixXcd z =
      lambda * Eigen::MatrixXcd::Identity(q.dim(), q.dim()) - grad;
  z = 0.5 * (z + z.adjoint()).eval();
  return {lambda, std::move(z)};
}

KKTReport kkt_residuals(const Covariance& q, const ChannelPair& ch) {
  const Eigen::MatrixXcd grad = secrecy_gradient(q, ch);
  auto [lambda, z] = recover_multipliers(q, ch);

  KKTReport report;
  report.lambda = lambda;

  // The recovered Z satisfies the stationarity equation identically, so the
  // residual measures what remains after forcing Z into the PSD cone: the
  // norm of Z's negative part.
  const EigenSystem zs = decompose_hermitian(z);
  report.z_min_eig = zs.eigenvalues.minCoeff();
  const Eigen::VectorXd negative = zs.eigenvalues.array().min(0.0).matrix();
  report.stationarity_residual = negative.norm() / std::max(1.0, grad.norm());

  report.complementarity_qz =
      (q.matrix() * z).norm() / (1.0 + q.matrix().norm() * z.norm());
  report.trace_gap = std::abs(q.trace() - q.p_total()) / q.p_total();
  report.primal_feas =
      std::max(0.0, -decompose_hermitian(q.matrix()).eigenvalues.minCoeff());
  report.applicable =
      classify_difference(ch).kind != DifferenceKind::NegativeSemidefinite;
  report.Z = std::move(z);
  return report;
}

bool is_kkt(const KKTReport& report, double tol) {
  return report.stationarity_residual <= tol &&
         report.z_min_eig >= -tol * std::max(1.0, report.Z.norm()) &&
         report.complementarity_qz <= tol && report.trace_gap <= tol &&
         report.primal_feas <= tol;
}

namespace {

// Random full-rank feasible start: A A' scaled to trace P_T for complex
// Gaussian A.
Covariance random_start(int n, double p_total, std::uint64_t seed) {
  GaussianRng rng(seed);
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.complex_gaussian();
  Eigen::MatrixXcd q = a * a.adjoint();
  q *= p_total / q.trace().real();
  q = 0.5 * (q + q.adjoint()).eval();
  return Covariance::unchecked(std::move(q), p_total);
}

}  // namespace

UniquenessReport uniqueness_experiment(const ChannelPair& ch, double p_total,
                                       int n_starts, std::uint64_t seed,
                                       const SolverConfig& cfg, bool parallel) {
  if (n_starts < 2) throw std::invalid_argument("uniqueness_experiment: need >= 2 starts");
  const DifferenceClass cls = classify_difference(ch);
  if (cls.kind == DifferenceKind::NegativeSemidefinite) {
    throw std::invalid_argument(
        "uniqueness_experiment: channel difference is negative semidefinite; "
        "the secrecy rate is identically zero and the uniqueness claim does not apply");
  }

  auto run_start = [&](int index) {
    const SolveResult r =
        solve_apg(ch, p_total, cfg, random_start(ch.n_t(), p_total, child_seed(seed, index)));
    return StartOutcome{r.objective, r.q_opt.matrix(), r.kkt};
  };

  std::vector<StartOutcome> outcomes(n_starts, StartOutcome{0.0, {}, {}});
  if (parallel) {
    std::vector<std::future<StartOutcome>> futures;
    futures.reserve(n_starts);
    for (int i = 0; i < n_starts; ++i) {
      futures.push_back(std::async(std::launch::async, run_start, i));
    }
    for (int i = 0; i < n_starts; ++i) outcomes[i] = futures[i].get();
  } else {
    for (int i = 0; i < n_starts; ++i) outcomes[i] = run_start(i);
  }

  UniquenessReport report;
  report.max_pairwise_dist = 0.0;
  double lo = outcomes[0].objective, hi = outcomes[0].objective;
  for (int a = 0; a < n_starts; ++a) {
    lo = std::min(lo, outcomes[a].objective);
    hi = std::max(hi, outcomes[a].objective);
    for (int b = a + 1; b < n_starts; ++b) {
      report.max_pairwise_dist =
          std::max(report.max_pairwise_dist, (outcomes[a].q - outcomes[b].q).norm());
    }
  }
  report.objective_spread = hi - lo;
  report.per_start = std::move(outcomes);
  // At the exact PSD/indefinite boundary (max eig of H'H - G'G == 0) the
  // KKT point is not known to be unique; flag instead of asserting agreement.
  const double tol = 1e-9 * std::max(1.0, std::max(std::abs(cls.min_eig), std::abs(cls.max_eig)));
  report.boundary_flagged = std::abs(cls.max_eig) <= tol;
  return report;
}

}  // namespace wtc
