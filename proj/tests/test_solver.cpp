#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "wtc/errors.hpp"
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

SolverConfig tight_config() {
  SolverConfig cfg;
  cfg.epsilon = 1e-10;
  cfg.max_iters = 100000;
  return cfg;
}

}  // namespace

TEST_CASE("scalar channel h=2, g=1, P=1 solves to the endpoint optimum") {
  // The scalar rate is increasing in q when |h| > |g|, so q* = P_T and the
  // objective is ln 2.5.
  const SolveResult r = solve_apg(scalar_channel(2.0, 1.0), 1.0);
  CHECK(r.status == SolveStatus::Converged);
  CHECK(std::abs(r.objective - std::log(2.5)) <= 1e-6);
  CHECK(std::abs(r.q_opt.matrix()(0, 0).real() - 1.0) <= 1e-6);
  CHECK(r.objective == doctest::Approx(secrecy_rate(r.q_opt, scalar_channel(2.0, 1.0)))
                           .epsilon(1e-12));
}

TEST_CASE("negative semidefinite difference short-circuits to zero") {
  const ChannelPair ch{Eigen::MatrixXcd::Identity(2, 2),
                       2.0 * Eigen::MatrixXcd::Identity(2, 2)};
  const SolveResult r = solve_apg(ch, 7.0);
  CHECK(r.status == SolveStatus::DegradedZero);
  CHECK(r.objective == 0.0);
  CHECK(r.q_opt.matrix().norm() == 0.0);
  CHECK(r.trace.empty());
  CHECK_FALSE(r.kkt.applicable);
}

TEST_CASE("two initializations reach the same point") {
  const ChannelPair ch = generate_channel(4, 4, 4, 2024);
  const double p_total = std::pow(10.0, 1.5);  // 15 dB
  // The objective flattens at high SNR (the trace multiplier shrinks), so a
  // tight epsilon is needed before iterate distances resolve to 1e-4.
  SolverConfig cfg = tight_config();
  cfg.epsilon = 1e-13;

  const SolveResult a = solve_apg(ch, p_total, cfg);  // uniform start
  const SolveResult b =
      solve_apg(ch, p_total, cfg, test::random_feasible(4, p_total, 555));
  CHECK(a.status == SolveStatus::Converged);
  CHECK(b.status == SolveStatus::Converged);
  CHECK(std::abs(a.objective - b.objective) <= 1e-8);
  CHECK((a.q_opt.matrix() - b.q_opt.matrix()).norm() <= 1e-4);
}

TEST_CASE("objective sequence ascends monotonically") {
  for (std::uint64_t seed : {1ULL, 7ULL, 13ULL}) {
    const ChannelPair ch = generate_channel(4, 4, 4, seed);
    const SolveResult r = solve_apg(ch, std::pow(10.0, 1.5));
    REQUIRE(!r.trace.empty());
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& rec : r.trace) {
      CHECK(rec.objective >= prev - 1e-12 * std::max(1.0, std::abs(prev)));
      prev = rec.objective;
    }
  }
}

TEST_CASE("line search bookkeeping") {
  const ChannelPair ch = generate_channel(4, 4, 4, 31);
  const double p_total = std::pow(10.0, 1.5);
  const SolveResult r = solve_apg(ch, p_total);
  const double lip = lipschitz_constant(ch);
  const double gamma = r.config.gamma_u;

  double beta_prev = r.config.beta0;
  for (const auto& rec : r.trace) {
    // Count bound from the relaxation identity.
    const double bound = 2.0 + std::log(rec.beta / beta_prev) / std::log(gamma) + 1.0;
    CHECK(rec.linesearch_steps <= bound + 1e-9);
    // The accepted beta (pre-relaxation) never exceeds gamma_u * L.
    const double accepted = beta_prev * std::pow(gamma, rec.linesearch_steps - 1);
    CHECK(accepted <= gamma * lip * (1.0 + 1e-9));
    beta_prev = rec.beta;
  }
}

TEST_CASE("momentum stays in (0, 1]") {
  const ChannelPair ch = generate_channel(4, 3, 5, 77);
  const SolveResult r = solve_apg(ch, 10.0);
  for (const auto& rec : r.trace) {
    CHECK(rec.alpha > 0.0);
    CHECK(rec.alpha <= 1.0);
  }
}

TEST_CASE("final iterate satisfies the feasibility invariants") {
  const ChannelPair ch = generate_channel(4, 4, 4, 99);
  const double p_total = 20.0;
  const SolveResult r = solve_apg(ch, p_total);
  // The checked constructor re-validates Hermitian/PSD/trace.
  CHECK_NOTHROW(Covariance(r.q_opt.matrix(), p_total));
}

TEST_CASE("infeasible q_init is rejected") {
  const ChannelPair ch = generate_channel(2, 2, 2, 5);
  const Covariance too_big = Covariance::unchecked(
      3.0 * Eigen::MatrixXcd::Identity(2, 2), 1.0);  // trace 6 > 1
  CHECK_THROWS_AS(solve_apg(ch, 1.0, {}, too_big), std::invalid_argument);
}

TEST_CASE("runaway line search reports a numeric error") {
  const ChannelPair ch = generate_channel(3, 3, 3, 8);
  SolverConfig cfg;
  cfg.beta0 = cfg.l0 = 1e-9;  // far below L, so backtracking must grow beta
  cfg.max_linesearch = 2;
  CHECK_THROWS_AS(solve_apg(ch, 10.0, cfg), NumericError);
}

TEST_CASE("fixed-step projected gradient baseline") {
  SUBCASE("scalar endpoint optimum") {
    const ChannelPair ch = scalar_channel(2.0, 1.0);
    SolverConfig cfg;
    cfg.epsilon = 1e-14;
    cfg.window = 1;
    cfg.max_iters = 20000;
    const SolveResult r = solve_pg_fixed(ch, 1.0, 1.0 / lipschitz_constant(ch), cfg);
    CHECK(std::abs(r.objective - std::log(2.5)) <= 1e-6);
  }
  SUBCASE("degraded channel short-circuits") {
    const ChannelPair ch{Eigen::MatrixXcd::Identity(2, 2),
                         2.0 * Eigen::MatrixXcd::Identity(2, 2)};
    const SolveResult r = solve_pg_fixed(ch, 3.0, 0.1);
    CHECK(r.status == SolveStatus::DegradedZero);
    CHECK(r.objective == 0.0);
  }
  SUBCASE("monotone ascent with step 1/L") {
    const ChannelPair ch = generate_channel(4, 4, 4, 16);
    const SolveResult r = solve_pg_fixed(ch, 10.0, 1.0 / lipschitz_constant(ch));
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& rec : r.trace) {
      CHECK(rec.objective >= prev - 1e-12 * std::max(1.0, std::abs(prev)));
      prev = rec.objective;
    }
  }
  SUBCASE("agrees with the accelerated solver on a random channel") {
    const ChannelPair ch = generate_channel(4, 4, 4, 404);
    const double p_total = std::pow(10.0, 1.5);
    const SolveResult apg = solve_apg(ch, p_total, tight_config());
    SolverConfig pg_cfg = tight_config();
    pg_cfg.epsilon = 1e-13;
    pg_cfg.max_iters = 300000;
    const SolveResult pg =
        solve_pg_fixed(ch, p_total, 1.0 / lipschitz_constant(ch), pg_cfg);
    CHECK(std::abs(apg.objective - pg.objective) <= 1e-6);
  }
}

TEST_CASE("single-step stopping rule is available via window = 1") {
  const ChannelPair ch = generate_channel(3, 3, 3, 12);
  SolverConfig cfg;
  cfg.window = 1;
  cfg.epsilon = 1e-9;
  const SolveResult r = solve_apg(ch, 5.0, cfg);
  CHECK(r.status == SolveStatus::Converged);
  const std::size_t n = r.trace.size();
  REQUIRE(n >= 2);
  CHECK(r.trace[n - 1].objective - r.trace[n - 2].objective <= 1e-9);
}

TEST_CASE("trace CSV export uses the exact header") {
  const ChannelPair ch = generate_channel(2, 2, 2, 3);
  const SolveResult r = solve_apg(ch, 4.0);
  const std::string path = "trace_test.csv";
  write_trace_csv(r.trace, path);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "iter,objective_nats,beta,alpha,linesearch_steps,grad_norm,step_norm,"
        "extrap_accepted,elapsed_s");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == r.trace.size());
  std::remove(path.c_str());
}
