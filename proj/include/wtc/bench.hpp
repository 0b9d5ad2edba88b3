#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wtc/solver.hpp"

namespace wtc {

enum class SolverKind { Apg, PgFixed };

const char* to_string(SolverKind kind);

// Monte Carlo experiment description. P_T = 10^(snr_db/10) against the
// unit-variance noise model. When degraded_scale is set, G is replaced by
// degraded_scale * H after generation (sign-definite difference ensemble).
struct BenchSpec {
  std::vector<std::array<int, 3>> dims;  // (N_t, N_r, N_e)
  double snr_db = 15.0;
  int n_trials = 1;
  std::uint64_t seed = 1;
  std::vector<SolverKind> solvers = {SolverKind::Apg};
  double epsilon = 1e-5;
  int window = 5;
  int max_iters = 20000;
  std::optional<double> degraded_scale;
};

struct TrialRecord {
  std::array<int, 3> dims;
  std::uint64_t seed;
  SolverKind solver;
  int iterations;
  double wall_time_s;
  double final_objective;
  bool kkt_pass;  // kkt_residuals at tol 1e-5
};

struct Aggregate {
  std::array<int, 3> dims;
  SolverKind solver;
  double mean_time_s;
  double median_time_s;
  double mean_iterations;
};

struct ConvergenceCurve {
  int trial;
  SolverKind solver;
  std::vector<double> objectives;  // C_s(Q_k) per iteration
  std::vector<double> residuals;   // C_best - C_s(Q_k)
};

struct BenchResult {
  std::vector<TrialRecord> records;
  std::vector<Aggregate> aggregates;
  std::vector<ConvergenceCurve> curves;  // convergence experiment only
};

// Recompute aggregates from records and compare; used to validate exports.
bool aggregates_consistent(const BenchResult& result, double tol = 1e-12);

// Per-trial residual curves residual_k = C_best - C_s(Q_k), where C_best is
// the largest objective any solver reached on that channel. Trials run on a
// worker pool; per-trial channels are pure in (seed, trial).
BenchResult run_convergence_experiment(const BenchSpec& spec);

// Wall-clock comparison on identical channel sequences. Solves run
// sequentially so the timings are not distorted by contention.
BenchResult run_timing_experiment(const BenchSpec& spec);

// Writes convergence_<trial>.csv files (header: iter,solver,objective_nats,residual).
void write_convergence_csvs(const BenchResult& result, const std::string& out_dir);

}  // namespace wtc
