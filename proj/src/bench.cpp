#include "wtc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "wtc/objective.hpp"
#include "wtc/rng.hpp"

namespace wtc {

namespace {

using Clock = std::chrono::steady_clock;

void validate(const BenchSpec& spec) {
  if (spec.n_trials < 1) throw std::invalid_argument("BenchSpec: n_trials must be >= 1");
  if (!std::isfinite(spec.snr_db)) throw std::invalid_argument("BenchSpec: snr_db must be finite");
  if (spec.dims.empty()) throw std::invalid_argument("BenchSpec: dims must be non-empty");
  if (spec.solvers.empty()) throw std::invalid_argument("BenchSpec: solvers must be non-empty");
}

double p_total_of(const BenchSpec& spec) { return std::pow(10.0, spec.snr_db / 10.0); }

SolverConfig stopping_of(const BenchSpec& spec) {
  SolverConfig cfg;
  cfg.epsilon = spec.epsilon;
  cfg.window = spec.window;
  cfg.max_iters = spec.max_iters;
  return cfg;
}

ChannelPair trial_channel(const BenchSpec& spec, std::size_t dims_index, int trial) {
  const auto [nt, nr, ne] = spec.dims[dims_index];
  const std::uint64_t seed =
      child_seed(spec.seed, dims_index * static_cast<std::uint64_t>(spec.n_trials) + trial);
  ChannelPair ch = generate_channel(nt, nr, ne, seed);
  if (spec.degraded_scale) {
    ch.G = *spec.degraded_scale * ch.H;  // sign-definite difference ensemble
  }
  return ch;
}

SolveResult run_solver(SolverKind kind, const ChannelPair& ch, double p_total,
                       const SolverConfig& cfg) {
  switch (kind) {
    case SolverKind::Apg:
      return solve_apg(ch, p_total, cfg);
    case SolverKind::PgFixed:
      return solve_pg_fixed(ch, p_total, 1.0 / lipschitz_constant(ch), cfg);
  }
  throw std::logic_error("unknown solver kind");
}

std::vector<Aggregate> aggregate(const std::vector<TrialRecord>& records) {
  std::map<std::pair<std::array<int, 3>, SolverKind>, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) groups[{r.dims, r.solver}].push_back(&r);

  std::vector<Aggregate> out;
  for (const auto& [key, group] : groups) {
    std::vector<double> times;
    times.reserve(group.size());
    double time_sum = 0.0, iter_sum = 0.0;
    for (const auto* r : group) {
      times.push_back(r->wall_time_s);
      time_sum += r->wall_time_s;
      iter_sum += r->iterations;
    }
    std::sort(times.begin(), times.end());
    const std::size_t n = times.size();
    const double median = (n % 2 == 1) ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
    out.push_back({key.first, key.second, time_sum / n, median, iter_sum / n});
  }
  return out;
}

}  // namespace

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Apg: return "apg";
    case SolverKind::PgFixed: return "pg_fixed";
  }
  return "?";
}

bool aggregates_consistent(const BenchResult& result, double tol) {
  const std::vector<Aggregate> fresh = aggregate(result.records);
  if (fresh.size() != result.aggregates.size()) return false;
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    const Aggregate& a = result.aggregates[i];
    const Aggregate& b = fresh[i];
    if (a.dims != b.dims || a.solver != b.solver) return false;
    if (std::abs(a.mean_time_s - b.mean_time_s) > tol) return false;
    if (std::abs(a.median_time_s - b.median_time_s) > tol) return false;
    if (std::abs(a.mean_iterations - b.mean_iterations) > tol) return false;
  }
  return true;
}

BenchResult run_convergence_experiment(const BenchSpec& spec) {
  validate(spec);
  const double p_total = p_total_of(spec);
  const SolverConfig cfg = stopping_of(spec);

  struct TrialOutput {
    std::vector<TrialRecord> records;
    std::vector<ConvergenceCurve> curves;
  };

  auto run_trial = [&](std::size_t dims_index, int trial) {
    const ChannelPair ch = trial_channel(spec, dims_index, trial);
    TrialOutput out;
    std::vector<SolveResult> results;
    results.reserve(spec.solvers.size());
    for (SolverKind kind : spec.solvers) {
      const auto t0 = Clock::now();
      results.push_back(run_solver(kind, ch, p_total, cfg));
      const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
      const SolveResult& r = results.back();
      out.records.push_back({spec.dims[dims_index],
                             child_seed(spec.seed, dims_index * spec.n_trials + trial),
                             kind, static_cast<int>(r.trace.size()), elapsed, r.objective,
                             is_kkt(r.kkt, 1e-5)});
    }
    // Capacity reference: the best objective any solver reached on this
    // channel (the unique KKT point makes the best local solve the capacity).
    double c_best = -std::numeric_limits<double>::infinity();
    for (const auto& r : results) c_best = std::max(c_best, r.objective);
    for (std::size_t s = 0; s < results.size(); ++s) {
      ConvergenceCurve curve;
      curve.trial = trial;
      curve.solver = spec.solvers[s];
      for (const auto& rec : results[s].trace) {
        curve.objectives.push_back(rec.objective);
        curve.residuals.push_back(c_best - rec.objective);
      }
      out.curves.push_back(std::move(curve));
    }
    return out;
  };

  std::vector<std::pair<std::size_t, int>> tasks;
  for (std::size_t d = 0; d < spec.dims.size(); ++d) {
    for (int t = 0; t < spec.n_trials; ++t) tasks.emplace_back(d, t);
  }

  // Bounded worker pool; each task writes its own slot, so the result is
  // independent of scheduling.
  std::vector<TrialOutput> outputs(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
      outputs[i] = run_trial(tasks[i].first, tasks[i].second);
    }
  };
  const std::size_t n_workers = std::min<std::size_t>(
      tasks.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w + 1 < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  BenchResult result;
  for (auto& out : outputs) {
    for (auto& r : out.records) result.records.push_back(std::move(r));
    for (auto& c : out.curves) result.curves.push_back(std::move(c));
  }
  result.aggregates = aggregate(result.records);
  return result;
}

BenchResult run_timing_experiment(const BenchSpec& spec) {
  validate(spec);
  if (spec.solvers.size() < 2 && spec.dims.size() < 2) {
    throw std::invalid_argument("run_timing_experiment: need >= 2 solvers or >= 2 dims");
  }
  const double p_total = p_total_of(spec);
  const SolverConfig cfg = stopping_of(spec);

  BenchResult result;
  for (std::size_t d = 0; d < spec.dims.size(); ++d) {
    for (int t = 0; t < spec.n_trials; ++t) {
      const ChannelPair ch = trial_channel(spec, d, t);
      for (SolverKind kind : spec.solvers) {
        const auto t0 = Clock::now();
        const SolveResult r = run_solver(kind, ch, p_total, cfg);
        const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
        result.records.push_back({spec.dims[d],
                                  child_seed(spec.seed, d * spec.n_trials + t), kind,
                                  static_cast<int>(r.trace.size()), elapsed, r.objective,
                                  is_kkt(r.kkt, 1e-5)});
      }
    }
  }
  result.aggregates = aggregate(result.records);
  return result;
}

void write_convergence_csvs(const BenchResult& result, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::map<int, std::vector<const ConvergenceCurve*>> by_trial;
  for (const auto& c : result.curves) by_trial[c.trial].push_back(&c);

  for (const auto& [trial, curves] : by_trial) {
    std::ofstream out(std::filesystem::path(out_dir) /
                      ("convergence_" + std::to_string(trial) + ".csv"));
    out.precision(17);
    out << "iter,solver,objective_nats,residual\n";
    for (const auto* curve : curves) {
      for (std::size_t i = 0; i < curve->objectives.size(); ++i) {
        out << (i + 1) << ',' << to_string(curve->solver) << ','
            << curve->objectives[i] << ',' << curve->residuals[i] << '\n';
      }
    }
  }
}

}  // namespace wtc
