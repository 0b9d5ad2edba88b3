#include "wtc/solver.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wtc/errors.hpp"
#include "wtc/objective.hpp"
#include "wtc/projection.hpp"

namespace wtc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void validate(const SolverConfig& cfg) {
  if (cfg.gamma_u <= 1.0) throw std::invalid_argument("SolverConfig: gamma_u must be > 1");
  if (cfg.xi <= 0.0 || cfg.xi >= 1.0) throw std::invalid_argument("SolverConfig: xi must be in (0,1)");
  if (cfg.alpha0 <= 0.0 || cfg.alpha0 > 1.0) throw std::invalid_argument("SolverConfig: alpha0 must be in (0,1]");
  if (cfg.epsilon <= 0.0) throw std::invalid_argument("SolverConfig: epsilon must be > 0");
  if (cfg.window < 1) throw std::invalid_argument("SolverConfig: window must be >= 1");
  if (cfg.max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  if (cfg.max_linesearch < 1) throw std::invalid_argument("SolverConfig: max_linesearch must be >= 1");
  if (cfg.feas_tol <= 0.0) throw std::invalid_argument("SolverConfig: feas_tol must be > 0");
}

// Fill the beta0/l0 defaults from the channel: max(1e-3, 1e-3 * L).
SolverConfig resolve(const SolverConfig& cfg, const ChannelPair& ch) {
  SolverConfig out = cfg;
  const double fallback = std::max(1e-3, 1e-3 * lipschitz_constant(ch));
  if (out.l0 <= 0.0) out.l0 = fallback;
  if (out.beta0 <= 0.0) out.beta0 = out.l0;
  validate(out);
  return out;
}

Eigen::MatrixXcd initial_point(const ChannelPair& ch, double p_total,
                               const std::optional<Covariance>& q_init) {
  if (!q_init) return Covariance::uniform(ch.n_t(), p_total).matrix();
  if (q_init->dim() != ch.n_t()) {
    throw std::invalid_argument("q_init dimension does not match the channel");
  }
  if (q_init->trace() > p_total * (1.0 + 1e-9)) {
    throw std::invalid_argument("q_init exceeds the power budget");
  }
  return q_init->matrix();
}

// Windowed stopping rule: increase of the objective over the last `window`
// iterations at most epsilon. window = 1 is the literal single-step rule.
bool stop_now(const std::vector<double>& objectives, double epsilon, int window) {
  const int k = static_cast<int>(objectives.size()) - 1;
  if (k < window) return false;
  return objectives[k] - objectives[k - window] <= epsilon;
}

SolveResult degraded_zero_result(const ChannelPair& ch, double p_total,
                                 const SolverConfig& cfg) {
  SolveResult result{Covariance::zero(ch.n_t(), p_total), 0.0, {}, {}, SolveStatus::DegradedZero, cfg};
  result.kkt = kkt_residuals(result.q_opt, ch);
  return result;
}

SolveResult finish(Covariance q_opt, const ChannelPair& ch, IterationTrace trace,
                   SolveStatus status, const SolverConfig& cfg) {
  SolveResult result{std::move(q_opt), 0.0, std::move(trace), {}, status, cfg};
  result.objective = secrecy_rate(result.q_opt, ch);
  result.kkt = kkt_residuals(result.q_opt, ch);
  return result;
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIters: return "MaxIters";
    case SolveStatus::DegradedZero: return "DegradedZero";
  }
  return "?";
}

SolveResult solve_apg(const ChannelPair& ch, double p_total, const SolverConfig& cfg_in,
                      std::optional<Covariance> q_init) {
  if (p_total <= 0.0) throw std::invalid_argument("solve_apg: p_total must be > 0");
  const SolverConfig cfg = resolve(cfg_in, ch);
  if (classify_difference(ch).kind == DifferenceKind::NegativeSemidefinite) {
    return degraded_zero_result(ch, p_total, cfg);
  }

  const auto start = Clock::now();
  Eigen::MatrixXcd q_prev = initial_point(ch, p_total, q_init);
  Eigen::MatrixXcd y = q_prev;  // Y_1 = Q_0
  double beta = cfg.beta0;
  double alpha = cfg.alpha0;

  std::vector<double> objectives{secrecy_rate(q_prev, ch)};
  IterationTrace trace;
  trace.reserve(256);
  SolveStatus status = SolveStatus::MaxIters;
  Eigen::MatrixXcd q = q_prev;

  for (int k = 1; k <= cfg.max_iters; ++k) {
    const Eigen::MatrixXcd grad = secrecy_gradient(y, ch);
    const double rate_y = secrecy_rate(y, ch);
    const double grad_norm = grad.norm();

    // Backtracking line search: grow beta until the surrogate
    // mu_beta(Y_k; Q_k) lower-bounds C_s(Q_k). The comparison carries a
    // relative guard absorbing evaluation rounding; its size matches the
    // monotonicity slack tolerated downstream.
    int ls_steps = 0;
    double rate_q = 0.0;
    while (true) {
      ++ls_steps;
      if (ls_steps > cfg.max_linesearch) {
        std::ostringstream msg;
        msg << "line search exceeded " << cfg.max_linesearch
            << " steps at iteration " << k << " (beta=" << beta << ")";
        throw NumericError(msg.str());
      }
      q = project(y + (1.0 / beta) * grad, p_total).matrix();
      rate_q = secrecy_rate(q, ch);
      const Eigen::MatrixXcd step = q - y;
      const double model =
          rate_y + (grad * step).trace().real() - 0.5 * beta * step.squaredNorm();
      const double guard = 1e-12 * std::max(1.0, std::abs(rate_q));
      if (rate_q >= model - guard) break;
      beta *= cfg.gamma_u;
    }
    beta = std::max(cfg.l0, beta / cfg.gamma_u);

    // Extrapolation with monitored momentum.
    const Eigen::MatrixXcd z = q + alpha * (q - q_prev);
    bool accepted = false;
    {
      const EigenSystem zs = decompose_hermitian(0.5 * (z + z.adjoint()));
      const double z_trace = zs.eigenvalues.sum();
      const bool feasible =
          zs.eigenvalues.minCoeff() >= -cfg.feas_tol * std::max(1.0, z.norm()) &&
          z_trace <= p_total * (1.0 + cfg.feas_tol);
      if (feasible) {
        // Evaluate the rate at the projection of Z_k: identical to Z_k up to
        // the feasibility tolerance, and exactly feasible, so carrying it
        // forward keeps the ascent chain intact.
        const double c = water_level(zs.eigenvalues, p_total);
        const Eigen::VectorXd clipped = (zs.eigenvalues.array() - c).max(0.0).matrix();
        Eigen::MatrixXcd z_proj =
            zs.eigenvectors * clipped.asDiagonal() * zs.eigenvectors.adjoint();
        z_proj = 0.5 * (z_proj + z_proj.adjoint()).eval();
        if (secrecy_rate(z_proj, ch) >= rate_q) {
          accepted = true;
          alpha = std::min(alpha / cfg.xi, 1.0);
          y = std::move(z_proj);
        }
      }
      if (!accepted) {
        alpha = cfg.xi * alpha;
        y = q;
      }
    }

    trace.push_back({k, rate_q, beta, alpha, ls_steps, grad_norm,
                     (q - q_prev).norm(), accepted, seconds_since(start)});
    objectives.push_back(rate_q);
    q_prev = q;

    if (stop_now(objectives, cfg.epsilon, cfg.window)) {
      status = SolveStatus::Converged;
      break;
    }
  }

  return finish(Covariance::unchecked(std::move(q), p_total), ch, std::move(trace),
                status, cfg);
}

SolveResult solve_pg_fixed(const ChannelPair& ch, double p_total, double step,
                           const SolverConfig& cfg_in, std::optional<Covariance> q_init) {
  if (p_total <= 0.0) throw std::invalid_argument("solve_pg_fixed: p_total must be > 0");
  if (step <= 0.0) throw std::invalid_argument("solve_pg_fixed: step must be > 0");
  const SolverConfig cfg = resolve(cfg_in, ch);
  if (classify_difference(ch).kind == DifferenceKind::NegativeSemidefinite) {
    return degraded_zero_result(ch, p_total, cfg);
  }

  const auto start = Clock::now();
  Eigen::MatrixXcd q = initial_point(ch, p_total, q_init);
  std::vector<double> objectives{secrecy_rate(q, ch)};
  IterationTrace trace;
  trace.reserve(256);
  SolveStatus status = SolveStatus::MaxIters;

  for (int k = 1; k <= cfg.max_iters; ++k) {
    const Eigen::MatrixXcd grad = secrecy_gradient(q, ch);
    Eigen::MatrixXcd q_next = project(q + step * grad, p_total).matrix();
    const double rate = secrecy_rate(q_next, ch);
    trace.push_back({k, rate, 1.0 / step, 0.0, 0, grad.norm(), (q_next - q).norm(),
                     false, seconds_since(start)});
    objectives.push_back(rate);
    q = std::move(q_next);

    if (stop_now(objectives, cfg.epsilon, cfg.window)) {
      status = SolveStatus::Converged;
      break;
    }
  }

  return finish(Covariance::unchecked(std::move(q), p_total), ch, std::move(trace),
                status, cfg);
}

void write_trace_csv(const IterationTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file: " + path);
  out << "iter,objective_nats,beta,alpha,linesearch_steps,grad_norm,step_norm,"
         "extrap_accepted,elapsed_s\n";
  out.precision(17);
  for (const auto& r : trace) {
    out << r.k << ',' << r.objective << ',' << r.beta << ',' << r.alpha << ','
        << r.linesearch_steps << ',' << r.grad_norm << ',' << r.step_norm << ','
        << (r.extrapolation_accepted ? 1 : 0) << ',' << r.elapsed_s << '\n';
  }
}

}  // namespace wtc
