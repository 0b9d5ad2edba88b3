#include "wtc/oracle.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "wtc/objective.hpp"
#include "wtc/projection.hpp"

namespace wtc {

namespace {

double scalar_rate(double h2, double g2, double q) {
  return std::log1p(h2 * q) - std::log1p(g2 * q);
}

// ln det(I + a vv' + b ww') for the rank-2 spectral parameterization:
// reduces to the 2x2 determinant (1 + a|v|^2)(1 + b|w|^2) - a b |v'w|^2.
struct Rank2LogDet {
  double vv, ww, cross;  // |v|^2, |w|^2, |v'w|^2

  Rank2LogDet(const Eigen::MatrixXcd& mat, const Eigen::Vector2cd& u1,
              const Eigen::Vector2cd& u2) {
    const Eigen::VectorXcd v = mat * u1;
    const Eigen::VectorXcd w = mat * u2;
    vv = v.squaredNorm();
    ww = w.squaredNorm();
    cross = std::norm(v.dot(w));
  }

  double operator()(double a, double b) const {
    return std::log((1.0 + a * vv) * (1.0 + b * ww) - a * b * cross);
  }
};

// Short fixed-step projected ascent from the best grid point. Uses the plain
// 1/L step, independent of the accelerated solver's machinery.
Covariance refine_ascent(const ChannelPair& ch, Covariance q, int iters) {
  const double step = 1.0 / lipschitz_constant(ch);
  Eigen::MatrixXcd x = q.matrix();
  for (int i = 0; i < iters; ++i) {
    x = project(x + step * secrecy_gradient(x, ch), q.p_total()).matrix();
  }
  return Covariance::unchecked(std::move(x), q.p_total());
}

struct GridBest {
  double objective = -std::numeric_limits<double>::infinity();
  long long index = -1;  // lexicographic (theta, phi, a, b) linear index
  Eigen::Matrix2cd q;
};

}  // namespace

OracleResult oracle_scalar(std::complex<double> h, std::complex<double> g,
                           double p_total, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("oracle_scalar: grid_points must be >= 2");
  if (p_total <= 0.0) throw std::invalid_argument("oracle_scalar: p_total must be > 0");
  const double h2 = std::norm(h);
  const double g2 = std::norm(g);

  double best = -std::numeric_limits<double>::infinity();
  double best_q = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double q = p_total * static_cast<double>(i) / (grid_points - 1);
    const double rate = scalar_rate(h2, g2, q);
    if (rate > best) {
      best = rate;
      best_q = q;
    }
  }

  std::ostringstream spec;
  spec << "uniform q grid, " << grid_points << " points on [0, " << p_total << "]";
  Eigen::MatrixXcd qm(1, 1);
  qm(0, 0) = best_q;
  return {best, best, Covariance::unchecked(std::move(qm), p_total), grid_points,
          spec.str()};
}

OracleResult oracle_2x2(const ChannelPair& ch, double p_total,
                        const Oracle2x2Grid& grid, int refine_iters) {
  if (ch.n_t() != 2) throw std::invalid_argument("oracle_2x2: channel must have N_t = 2");
  if (grid.power_steps < 8 || grid.angle_steps < 8) {
    throw std::invalid_argument("oracle_2x2: grid steps must be >= 8");
  }
  if (p_total <= 0.0) throw std::invalid_argument("oracle_2x2: p_total must be > 0");

  const int ps = grid.power_steps;
  const int as = grid.angle_steps;

  auto eigenvector_pair = [](double theta, double phi) {
    const std::complex<double> e_phi = std::polar(1.0, phi);
    Eigen::Vector2cd u1, u2;
    u1 << std::cos(theta), std::sin(theta) * e_phi;
    u2 << -std::sin(theta) * std::conj(e_phi), std::cos(theta);
    return std::make_pair(u1, u2);
  };

  // theta in [0, pi/2], phi in [0, 2 pi); angle-dependent scalars are hoisted
  // so the (a, b) sweep is pure scalar arithmetic.
  auto scan_theta_range = [&](int t_begin, int t_end) {
    GridBest best;
    for (int ti = t_begin; ti < t_end; ++ti) {
      const double theta = 0.5 * M_PI * static_cast<double>(ti) / (as - 1);
      for (int pi_idx = 0; pi_idx < as; ++pi_idx) {
        const double phi = 2.0 * M_PI * static_cast<double>(pi_idx) / as;
        const auto [u1, u2] = eigenvector_pair(theta, phi);
        const Rank2LogDet bob(ch.H, u1, u2);
        const Rank2LogDet eve(ch.G, u1, u2);
        for (int ai = 0; ai < ps; ++ai) {
          const double a = p_total * static_cast<double>(ai) / (ps - 1);
          const double b_max = p_total - a;
          for (int bi = 0; bi < ps; ++bi) {
            const double b = b_max * static_cast<double>(bi) / (ps - 1);
            const double rate = bob(a, b) - eve(a, b);
            if (rate > best.objective) {
              best.objective = rate;
              best.index = ((static_cast<long long>(ti) * as + pi_idx) * ps + ai) * ps + bi;
              best.q = a * u1 * u1.adjoint() + b * u2 * u2.adjoint();
            }
          }
        }
      }
    }
    return best;
  };

  const int n_workers =
      std::max(1, static_cast<int>(std::min<unsigned>(std::thread::hardware_concurrency(), 8)));
  std::vector<std::future<GridBest>> futures;
  const int chunk = (as + n_workers - 1) / n_workers;
  for (int w = 0; w < n_workers; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(as, lo + chunk);
    if (lo >= hi) break;
    futures.push_back(std::async(std::launch::async, scan_theta_range, lo, hi));
  }
  GridBest best;
  for (auto& f : futures) {
    const GridBest candidate = f.get();
    // Max-reduction with lexicographic tie-break keeps the result independent
    // of the chunking.
    if (candidate.objective > best.objective ||
        (candidate.objective == best.objective && candidate.index < best.index)) {
      best = candidate;
    }
  }

  Eigen::MatrixXcd qm = 0.5 * (best.q + best.q.adjoint());
  Covariance best_cov = Covariance::unchecked(std::move(qm), p_total);
  const double grid_objective = best.objective;

  double refined_objective = grid_objective;
  if (refine_iters > 0) {
    Covariance refined = refine_ascent(ch, best_cov, refine_iters);
    const double rate = secrecy_rate(refined, ch);
    if (rate > refined_objective) {
      refined_objective = rate;
      best_cov = std::move(refined);
    }
  }

  std::ostringstream spec;
  spec << "spectral grid a x b x theta x phi = " << ps << "x" << ps << "x" << as
       << "x" << as << " on [0,P]x[0,P-a]x[0,pi/2]x[0,2pi), refine_iters="
       << refine_iters;
  const long long evals = static_cast<long long>(ps) * ps * as * as;
  return {refined_objective, grid_objective, std::move(best_cov), evals, spec.str()};
}

}  // namespace wtc
