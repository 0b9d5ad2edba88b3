#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "wtc/kkt.hpp"
#include "wtc/objective.hpp"
#include "wtc/solver.hpp"

using namespace wtc;

namespace {

ChannelPair scalar_channel(double h, double g) {
  Eigen::MatrixXcd hm(1, 1), gm(1, 1);
  hm(0, 0) = h;
  gm(0, 0) = g;
  return {hm, gm};
}

Covariance scalar_cov(double q, double p_total) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = q;
  return Covariance::unchecked(m, p_total);
}

}  // namespace

TEST_CASE("multiplier recovery at the scalar optimum") {
  // grad C_s(1) = 4/5 - 1/2 = 0.3; tr(grad Q)/P_T = 0.3, Z = 0.3 - 0.3 = 0.
  const auto [lambda, z] = recover_multipliers(scalar_cov(1.0, 1.0), scalar_channel(2.0, 1.0));
  CHECK(lambda == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(z.norm() <= 1e-15);
}

TEST_CASE("multiplier recovery at an interior non-optimal point") {
  // q = 0.5, P_T = 1: grad = 4/3 - 2/3 = 2/3, lambda = 0.5 * (2/3) / 1 = 1/3.
  const ChannelPair ch = scalar_channel(2.0, 1.0);
  const Covariance q = scalar_cov(0.5, 1.0);
  const auto [lambda, z] = recover_multipliers(q, ch);
  CHECK(lambda == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  const KKTReport report = kkt_residuals(q, ch);
  // Z = 1/3 - 2/3 = -1/3 has a negative part, so stationarity with a PSD
  // multiplier cannot hold: residual = (1/3) / max(1, 2/3).
  CHECK(report.stationarity_residual == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(report.stationarity_residual > 0.0);
  CHECK(report.z_min_eig == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK_FALSE(is_kkt(report));
}

TEST_CASE("H = G collapses all multipliers to zero") {
  const ChannelPair base = generate_channel(3, 3, 3, 19);
  const ChannelPair ch{base.H, base.H};
  const Covariance q = test::random_feasible(3, 4.0, 5);
  const auto [lambda, z] = recover_multipliers(q, ch);
  CHECK(lambda <= 1e-14);
  CHECK(z.norm() <= 1e-13);
}

TEST_CASE("solver output on the scalar channel is a numerical KKT point") {
  const ChannelPair ch = scalar_channel(2.0, 1.0);
  const SolveResult r = solve_apg(ch, 1.0);
  const KKTReport report = kkt_residuals(r.q_opt, ch);
  CHECK(report.stationarity_residual <= 1e-8);
  CHECK(report.z_min_eig >= -1e-8);
  CHECK(report.complementarity_qz <= 1e-8);
  CHECK(report.trace_gap <= 1e-8);
  CHECK(report.primal_feas <= 1e-8);
  CHECK(is_kkt(report, 1e-8));
}

TEST_CASE("Q = 0 fails KKT on a positive-difference channel") {
  const ChannelPair ch{2.0 * Eigen::MatrixXcd::Identity(2, 2),
                       Eigen::MatrixXcd::Identity(2, 2)};
  const KKTReport report = kkt_residuals(Covariance::zero(2, 3.0), ch);
  CHECK(report.trace_gap == doctest::Approx(1.0));
  CHECK(report.applicable);
  CHECK_FALSE(is_kkt(report));
}

TEST_CASE("degraded channel report is flagged not applicable") {
  const ChannelPair ch{Eigen::MatrixXcd::Identity(2, 2),
                       2.0 * Eigen::MatrixXcd::Identity(2, 2)};
  const KKTReport report = kkt_residuals(Covariance::zero(2, 3.0), ch);
  CHECK_FALSE(report.applicable);
}

TEST_CASE("converged solves carry a positive trace multiplier and tight trace") {
  for (std::uint64_t seed : {3ULL, 21ULL, 47ULL}) {
    const ChannelPair ch = generate_channel(4, 4, 4, seed);
    const SolveResult r = solve_apg(ch, 10.0);
    REQUIRE(r.status == SolveStatus::Converged);
    CHECK(r.kkt.lambda > 0.0);
    CHECK(r.kkt.trace_gap <= 1e-6);
  }
}

TEST_CASE("stationarity residual refines as epsilon tightens") {
  const ChannelPair ch = generate_channel(4, 4, 4, 64);
  double previous = std::numeric_limits<double>::infinity();
  for (const double eps : {1e-4, 1e-6, 1e-8}) {
    SolverConfig cfg;
    cfg.epsilon = eps;
    cfg.max_iters = 100000;
    const SolveResult r = solve_apg(ch, 10.0, cfg);
    CHECK(r.kkt.stationarity_residual <= previous + 1e-12);
    previous = r.kkt.stationarity_residual;
  }
}

TEST_CASE("uniqueness experiment on the scalar channel") {
  const ChannelPair ch = scalar_channel(2.0, 1.0);
  SolverConfig cfg;
  cfg.epsilon = 1e-10;
  const UniquenessReport rep = uniqueness_experiment(ch, 1.0, 10, 5, cfg);
  CHECK(rep.max_pairwise_dist <= 1e-8);
  CHECK(rep.objective_spread <= 1e-10);
  CHECK(rep.per_start.size() == 10);
  CHECK_FALSE(rep.boundary_flagged);
}

TEST_CASE("uniqueness experiment argument errors") {
  const ChannelPair ch = scalar_channel(2.0, 1.0);
  SolverConfig cfg;
  CHECK_THROWS_AS(uniqueness_experiment(ch, 1.0, 1, 5, cfg), std::invalid_argument);

  const ChannelPair degraded{Eigen::MatrixXcd::Identity(2, 2),
                             2.0 * Eigen::MatrixXcd::Identity(2, 2)};
  CHECK_THROWS_AS(uniqueness_experiment(degraded, 1.0, 4, 5, cfg), std::invalid_argument);
}

TEST_CASE("parallel and sequential uniqueness runs agree exactly") {
  const ChannelPair ch = generate_channel(3, 3, 3, 7);
  SolverConfig cfg;
  cfg.epsilon = 1e-9;
  const UniquenessReport par = uniqueness_experiment(ch, 5.0, 6, 11, cfg, true);
  const UniquenessReport seq = uniqueness_experiment(ch, 5.0, 6, 11, cfg, false);
  CHECK(par.max_pairwise_dist == seq.max_pairwise_dist);
  CHECK(par.objective_spread == seq.objective_spread);
  for (std::size_t i = 0; i < par.per_start.size(); ++i) {
    CHECK(par.per_start[i].objective == seq.per_start[i].objective);
    CHECK(par.per_start[i].q == seq.per_start[i].q);
  }
}

TEST_CASE("degraded-but-positive ensemble reaches a single point") {
  const ChannelPair base = generate_channel(4, 4, 4, 88);
  const ChannelPair ch{base.H, 0.3 * base.H};
  REQUIRE(classify_difference(ch).kind == DifferenceKind::PositiveSemidefinite);
  SolverConfig cfg;
  cfg.epsilon = 1e-10;
  cfg.max_iters = 200000;
  const UniquenessReport rep = uniqueness_experiment(ch, 5.0, 8, 4, cfg);
  CHECK(rep.max_pairwise_dist <= 1e-4);
  CHECK(rep.objective_spread <= 1e-8);
}
