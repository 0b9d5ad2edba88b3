#pragma once

#include <complex>
#include <string>

#include "wtc/channel.hpp"
#include "wtc/covariance.hpp"

namespace wtc {

// Result of a brute-force grid maximization of the secrecy rate.
// best_objective includes the optional local refinement; grid_objective is
// the best raw grid value (a certified lower bound on the capacity).
struct OracleResult {
  double best_objective;
  double grid_objective;
  Covariance best_q;
  long long evaluations;
  std::string grid_spec;
};

// Exhaustive scan of q in [0, p_total] for the 1x1x1 channel. The scalar rate
// ln(1+|h|^2 q) - ln(1+|g|^2 q) is monotone on the interval, so the maximum
// sits at an endpoint; the scan confirms that numerically instead of
// assuming it.
OracleResult oracle_scalar(std::complex<double> h, std::complex<double> g,
                           double p_total, int grid_points);

struct Oracle2x2Grid {
  int power_steps = 100;   // grid for each of a and b
  int angle_steps = 32;    // grid for each of theta and phi
};

// Exhaustive search for N_t = 2 over the spectral parameterization
//   Q = U diag(a, b) U',  a in [0, P_T], b in [0, P_T - a],
//   U = [[cos t, -sin t e^{-i p}], [sin t e^{i p}, cos t]],
// t in [0, pi/2], p in [0, 2 pi), which covers every 2x2 Hermitian PSD
// matrix with tr <= P_T. Ties break toward the lexicographically smallest
// grid index, so chunked parallel evaluation is deterministic.
// refine_iters > 0 polishes the best grid point by fixed-step projected
// ascent.
OracleResult oracle_2x2(const ChannelPair& ch, double p_total,
                        const Oracle2x2Grid& grid, int refine_iters = 0);

}  // namespace wtc
