#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wtc/channel.hpp"
#include "wtc/covariance.hpp"
#include "wtc/kkt.hpp"

namespace wtc {

// Knobs of the accelerated projected gradient method. beta0/l0 <= 0 selects
// the default max(1e-3, 1e-3 * L(ch)) at solve time.
struct SolverConfig {
  double beta0 = 0.0;        // initial line-search curvature, warm-started across iterations
  double l0 = 0.0;           // floor for the relaxation beta_k = max(l0, beta/gamma_u)
  double gamma_u = 2.0;      // line-search growth factor, > 1
  double xi = 0.5;           // momentum decay, in (0,1)
  double alpha0 = 1.0;       // initial momentum
  double epsilon = 1e-8;     // stopping threshold on the objective increase
  int window = 5;            // increase measured over the last `window` iterations
  int max_iters = 10000;
  int max_linesearch = 200;
  double feas_tol = 1e-9;    // extrapolation feasibility tolerance
};

struct IterationRecord {
  int k;
  double objective;          // C_s(Q_k), nats
  double beta;               // beta_k after the post-search relaxation
  double alpha;
  int linesearch_steps;      // projections evaluated by the line search
  double grad_norm;          // ||grad C_s(Y_k)||_F
  double step_norm;          // ||Q_k - Q_{k-1}||_F
  bool extrapolation_accepted;
  double elapsed_s;          // since solve start
};

using IterationTrace = std::vector<IterationRecord>;

enum class SolveStatus { Converged, MaxIters, DegradedZero };

const char* to_string(SolveStatus status);

struct SolveResult {
  Covariance q_opt;
  double objective;
  IterationTrace trace;
  KKTReport kkt;
  SolveStatus status;
  SolverConfig config;       // resolved knobs actually used
};

// Accelerated projected gradient with backtracking line search and adaptive
// momentum, applied directly to the non-convex secrecy rate. Returns
// DegradedZero with Q = 0 immediately when H'H - G'G is negative
// semidefinite (the rate is identically zero there).
SolveResult solve_apg(const ChannelPair& ch, double p_total, const SolverConfig& cfg = {},
                      std::optional<Covariance> q_init = std::nullopt);

// Plain projected gradient Q_{k+1} = Pi(Q_k + step * grad C_s(Q_k)), used as
// an independent consistency baseline. With step = 1/L the objective sequence
// is monotone non-decreasing. Stopping follows cfg.epsilon/window/max_iters.
SolveResult solve_pg_fixed(const ChannelPair& ch, double p_total, double step,
                           const SolverConfig& cfg = {},
                           std::optional<Covariance> q_init = std::nullopt);

// CSV with header
// iter,objective_nats,beta,alpha,linesearch_steps,grad_norm,step_norm,extrap_accepted,elapsed_s
void write_trace_csv(const IterationTrace& trace, const std::string& path);

}  // namespace wtc
