// Command-line front end: solve / kkt / oracle / unique / bench / gen over
// the JSON channel format. Exit codes: 0 success, 1 usage or input error,
// 2 non-convergence, 3 verification failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wtc/bench.hpp"
#include "wtc/errors.hpp"
#include "wtc/io.hpp"
#include "wtc/kkt.hpp"
#include "wtc/objective.hpp"
#include "wtc/oracle.hpp"
#include "wtc/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConverge = 2;
constexpr int kExitVerifyFail = 3;

struct SolveArgs {
  std::string channel_file;
  double power = 1.0;
  double epsilon = 1e-8;
  int window = 5;
  int max_iters = 10000;
  std::string trace_out;
  std::string json_out;
  bool bits = false;
};

int cmd_solve(const SolveArgs& args) {
  const wtc::ChannelPair ch = wtc::load_channel(args.channel_file);
  wtc::SolverConfig cfg;
  cfg.epsilon = args.epsilon;
  cfg.window = args.window;
  cfg.max_iters = args.max_iters;
  const wtc::SolveResult result = wtc::solve_apg(ch, args.power, cfg);

  if (!args.trace_out.empty()) wtc::write_trace_csv(result.trace, args.trace_out);
  const nlohmann::json j = wtc::solve_result_to_json(result);
  if (!args.json_out.empty()) wtc::write_text_file(args.json_out, j.dump(2) + "\n");

  std::cout << "status: " << wtc::to_string(result.status) << "\n"
            << "objective_nats: " << std::setprecision(17) << result.objective << "\n";
  if (args.bits) {
    std::cout << "objective_bits: " << result.objective / std::log(2.0) << "\n";
  }
  std::cout << "iterations: " << result.trace.size() << "\n";
  return result.status == wtc::SolveStatus::MaxIters ? kExitNoConverge : kExitOk;
}

int cmd_kkt(const std::string& channel_file, const std::string& q_file, double power,
            double tol, const std::string& json_out) {
  const wtc::ChannelPair ch = wtc::load_channel(channel_file);
  const wtc::Covariance q(wtc::load_matrix(q_file, "Q"), power);
  const wtc::KKTReport report = wtc::kkt_residuals(q, ch);
  const nlohmann::json j = wtc::kkt_report_to_json(report);
  if (!json_out.empty()) wtc::write_text_file(json_out, j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  if (!report.applicable) {
    std::cout << "note: KKT test not applicable (H'H - G'G is negative semidefinite; "
                 "the secrecy rate is identically zero)\n";
    return kExitOk;
  }
  return wtc::is_kkt(report, tol) ? kExitOk : kExitVerifyFail;
}

int cmd_unique(const std::string& channel_file, double power, int starts,
               std::uint64_t seed, double threshold, double epsilon,
               const std::string& json_out) {
  const wtc::ChannelPair ch = wtc::load_channel(channel_file);
  wtc::SolverConfig cfg;
  cfg.epsilon = epsilon;
  cfg.max_iters = 200000;
  const wtc::UniquenessReport report =
      wtc::uniqueness_experiment(ch, power, starts, seed, cfg);
  if (!json_out.empty()) {
    wtc::write_text_file(json_out, wtc::uniqueness_report_to_json(report).dump(2) + "\n");
  }
  std::cout << "max_pairwise_dist: " << std::setprecision(17)
            << report.max_pairwise_dist << "\n"
            << "objective_spread: " << report.objective_spread << "\n";
  if (report.boundary_flagged) {
    std::cout << "note: difference matrix at the PSD/indefinite boundary; "
                 "uniqueness is not asserted there\n";
    return kExitOk;
  }
  return report.max_pairwise_dist <= threshold ? kExitOk : kExitVerifyFail;
}

int cmd_gen(const std::string& dims, std::uint64_t seed, const std::string& out) {
  int nt = 0, nr = 0, ne = 0;
  char x1 = 0, x2 = 0;
  std::istringstream parse(dims);
  parse >> nt >> x1 >> nr >> x2 >> ne;
  if (!parse || x1 != 'x' || x2 != 'x' || nt < 1 || nr < 1 || ne < 1) {
    std::cerr << "error: --dims must look like NtxNrxNe, e.g. 4x4x4\n";
    return kExitUsage;
  }
  wtc::save_channel(wtc::generate_channel(nt, nr, ne, seed), out);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& channel_file, double power, double tol,
               int grid_power, int grid_angle, int refine_iters,
               const std::string& json_out) {
  const wtc::ChannelPair ch = wtc::load_channel(channel_file);

  wtc::SolverConfig cfg;
  cfg.epsilon = 1e-10;
  const wtc::SolveResult solved = wtc::solve_apg(ch, power, cfg);

  wtc::OracleResult oracle = [&] {
    if (ch.n_t() == 1 && ch.n_r() == 1 && ch.n_e() == 1) {
      return wtc::oracle_scalar(ch.H(0, 0), ch.G(0, 0), power,
                                grid_power > 0 ? grid_power : 100001);
    }
    if (ch.n_t() == 2) {
      return wtc::oracle_2x2(ch, power, {grid_power > 0 ? grid_power : 200, grid_angle},
                             refine_iters);
    }
    throw std::invalid_argument("oracle supports only 1x1x1 or N_t = 2 channels");
  }();

  if (!json_out.empty()) {
    wtc::write_text_file(json_out, wtc::oracle_result_to_json(oracle).dump(2) + "\n");
  }
  const double gap = std::abs(solved.objective - oracle.best_objective);
  std::cout << "solver_objective: " << std::setprecision(17) << solved.objective << "\n"
            << "oracle_objective: " << oracle.best_objective << "\n"
            << "gap: " << gap << "\n"
            << "grid: " << oracle.grid_spec << "\n";
  return gap <= tol ? kExitOk : kExitVerifyFail;
}

int cmd_bench(const std::string& spec_file, const std::string& out_dir,
              const std::string& mode) {
  std::ifstream in(spec_file);
  if (!in) {
    std::cerr << "error: cannot open spec file: " << spec_file << "\n";
    return kExitUsage;
  }
  nlohmann::json j;
  in >> j;
  const wtc::BenchSpec spec = wtc::bench_spec_from_json(j);

  const wtc::BenchResult result = (mode == "timing")
                                      ? wtc::run_timing_experiment(spec)
                                      : wtc::run_convergence_experiment(spec);
  std::filesystem::create_directories(out_dir);
  wtc::write_text_file((std::filesystem::path(out_dir) / "bench_results.json").string(),
                       wtc::bench_result_to_json(result).dump(2) + "\n");
  if (mode != "timing") wtc::write_convergence_csvs(result, out_dir);

  for (const auto& a : result.aggregates) {
    std::cout << a.dims[0] << "x" << a.dims[1] << "x" << a.dims[2] << " "
              << wtc::to_string(a.solver) << ": mean_time_s=" << a.mean_time_s
              << " mean_iters=" << a.mean_iterations << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIMO wiretap channel secrecy capacity tools"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "maximize the secrecy rate of a channel file");
  solve->add_option("channel", solve_args.channel_file, "channel JSON file")->required();
  solve->add_option("--power", solve_args.power, "total transmit power P_T")
      ->check(CLI::PositiveNumber);
  solve->add_option("--epsilon", solve_args.epsilon, "stopping threshold")
      ->check(CLI::PositiveNumber);
  solve->add_option("--window", solve_args.window, "stopping window (1 = single step)");
  solve->add_option("--max-iters", solve_args.max_iters, "iteration cap");
  solve->add_option("--trace-out", solve_args.trace_out, "per-iteration CSV path");
  solve->add_option("--json-out", solve_args.json_out, "result JSON path");
  solve->add_flag("--bits", solve_args.bits, "also print the objective in bits");

  std::string kkt_channel, kkt_q, kkt_json;
  double kkt_power = 1.0, kkt_tol = 1e-6;
  auto* kkt = app.add_subcommand("kkt", "evaluate KKT residuals of a candidate Q");
  kkt->add_option("channel", kkt_channel, "channel JSON file")->required();
  kkt->add_option("--q", kkt_q, "candidate Q JSON file (field \"Q\")")->required();
  kkt->add_option("--power", kkt_power, "total transmit power P_T")->check(CLI::PositiveNumber);
  kkt->add_option("--tol", kkt_tol, "residual tolerance");
  kkt->add_option("--json-out", kkt_json, "report JSON path");

  std::string uniq_channel, uniq_json;
  double uniq_power = 1.0, uniq_threshold = 1e-4, uniq_epsilon = 1e-10;
  int uniq_starts = 10;
  std::uint64_t uniq_seed = 1;
  auto* unique = app.add_subcommand("unique", "multi-start agreement experiment");
  unique->add_option("channel", uniq_channel, "channel JSON file")->required();
  unique->add_option("--power", uniq_power, "total transmit power P_T")
      ->check(CLI::PositiveNumber);
  unique->add_option("--starts", uniq_starts, "number of random starts (>= 2)")
      ->check(CLI::Range(2, 1000000));
  unique->add_option("--seed", uniq_seed, "base seed");
  unique->add_option("--threshold", uniq_threshold, "max pairwise distance for exit 0");
  unique->add_option("--epsilon", uniq_epsilon, "solver stopping threshold");
  unique->add_option("--json-out", uniq_json, "report JSON path");

  std::string gen_dims = "4x4x4", gen_out = "channel.json";
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "generate an i.i.d. CN(0,1) channel file");
  gen->add_option("--dims", gen_dims, "dimensions NtxNrxNe");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "output path")->required();

  std::string oracle_channel, oracle_json;
  double oracle_power = 1.0, oracle_tol = 1e-6;
  int oracle_grid_power = 0, oracle_grid_angle = 32, oracle_refine = 2000;
  auto* oracle = app.add_subcommand("oracle", "brute-force check of the solver");
  oracle->add_option("channel", oracle_channel, "channel JSON file")->required();
  oracle->add_option("--power", oracle_power, "total transmit power P_T")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--tol", oracle_tol, "max |solver - oracle| for exit 0");
  oracle->add_option("--grid-power", oracle_grid_power,
                     "power grid points (0 = auto: 100001 scalar, 200 for N_t=2)");
  oracle->add_option("--grid-angle", oracle_grid_angle, "angle grid points (N_t=2)");
  oracle->add_option("--refine-iters", oracle_refine, "local ascent steps after the grid");
  oracle->add_option("--json-out", oracle_json, "oracle result JSON path");

  std::string bench_spec, bench_out = ".", bench_mode = "convergence";
  auto* bench = app.add_subcommand("bench", "Monte Carlo benchmark harness");
  bench->add_option("--spec", bench_spec, "BenchSpec JSON file")->required();
  bench->add_option("--out-dir", bench_out, "output directory");
  bench->add_option("--mode", bench_mode, "convergence | timing")
      ->check(CLI::IsMember({"convergence", "timing"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_args);
    if (kkt->parsed()) return cmd_kkt(kkt_channel, kkt_q, kkt_power, kkt_tol, kkt_json);
    if (unique->parsed()) {
      return cmd_unique(uniq_channel, uniq_power, uniq_starts, uniq_seed, uniq_threshold,
                        uniq_epsilon, uniq_json);
    }
    if (gen->parsed()) return cmd_gen(gen_dims, gen_seed, gen_out);
    if (oracle->parsed()) {
      return cmd_oracle(oracle_channel, oracle_power, oracle_tol, oracle_grid_power,
                        oracle_grid_angle, oracle_refine, oracle_json);
    }
    if (bench->parsed()) return cmd_bench(bench_spec, bench_out, bench_mode);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const wtc::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNoConverge;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
