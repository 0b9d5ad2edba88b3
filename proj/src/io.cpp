#include "wtc/io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace wtc {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument(field + ": expected a non-empty array of rows");
  }
  const std::size_t n_rows = j.size();
  std::size_t n_cols = 0;
  Eigen::MatrixXcd m;
  for (std::size_t i = 0; i < n_rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.empty()) {
      throw std::invalid_argument(field + " row " + std::to_string(i) +
                                  ": expected a non-empty array of entries");
    }
    if (i == 0) {
      n_cols = row.size();
      m.resize(n_rows, n_cols);
    } else if (row.size() != n_cols) {
      throw std::invalid_argument(field + " row " + std::to_string(i) + ": ragged row (" +
                                  std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(n_cols) + ")");
    }
    for (std::size_t k = 0; k < n_cols; ++k) {
      const json& entry = row[k];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw std::invalid_argument(field + " row " + std::to_string(i) + " col " +
                                    std::to_string(k) + ": entries must be [re, im]");
      }
      const double re = entry[0].get<double>();
      const double im = entry[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw std::invalid_argument(field + " row " + std::to_string(i) + " col " +
                                    std::to_string(k) + ": non-finite entry");
      }
      m(i, k) = {re, im};
    }
  }
  return m;
}

json channel_to_json(const ChannelPair& ch) {
  return {{"H", matrix_to_json(ch.H)}, {"G", matrix_to_json(ch.G)}};
}

ChannelPair channel_from_json(const json& j) {
  if (!j.contains("H") || !j.contains("G")) {
    throw std::invalid_argument("channel file must contain fields \"H\" and \"G\"");
  }
  return {matrix_from_json(j.at("H"), "H"), matrix_from_json(j.at("G"), "G")};
}

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

}  // namespace

ChannelPair load_channel(const std::string& path) {
  return channel_from_json(load_json_file(path));
}

void save_channel(const ChannelPair& ch, const std::string& path) {
  write_text_file(path, channel_to_json(ch).dump(2) + "\n");
}

Eigen::MatrixXcd load_matrix(const std::string& path, const std::string& field) {
  const json j = load_json_file(path);
  if (!j.contains(field)) {
    throw std::invalid_argument(path + ": missing field \"" + field + "\"");
  }
  return matrix_from_json(j.at(field), field);
}

json kkt_report_to_json(const KKTReport& report) {
  return {{"lambda", report.lambda},
          {"Z", matrix_to_json(report.Z)},
          {"stationarity_residual", report.stationarity_residual},
          {"z_min_eig", report.z_min_eig},
          {"complementarity_qz", report.complementarity_qz},
          {"trace_gap", report.trace_gap},
          {"primal_feas", report.primal_feas},
          {"applicable", report.applicable}};
}

json solve_result_to_json(const SolveResult& result) {
  const SolverConfig& c = result.config;
  return {{"objective_nats", result.objective},
          {"status", to_string(result.status)},
          {"Q", matrix_to_json(result.q_opt.matrix())},
          {"p_total", result.q_opt.p_total()},
          {"iterations", result.trace.size()},
          {"kkt", kkt_report_to_json(result.kkt)},
          {"config",
           {{"beta0", c.beta0},
            {"l0", c.l0},
            {"gamma_u", c.gamma_u},
            {"xi", c.xi},
            {"alpha0", c.alpha0},
            {"epsilon", c.epsilon},
            {"window", c.window},
            {"max_iters", c.max_iters},
            {"max_linesearch", c.max_linesearch},
            {"feas_tol", c.feas_tol}}}};
}

json uniqueness_report_to_json(const UniquenessReport& report) {
  json starts = json::array();
  for (const auto& s : report.per_start) {
    starts.push_back({{"objective", s.objective}, {"kkt", kkt_report_to_json(s.kkt)}});
  }
  return {{"max_pairwise_dist", report.max_pairwise_dist},
          {"objective_spread", report.objective_spread},
          {"boundary_flagged", report.boundary_flagged},
          {"per_start", std::move(starts)}};
}

json oracle_result_to_json(const OracleResult& result) {
  return {{"best_objective", result.best_objective},
          {"grid_objective", result.grid_objective},
          {"best_q", matrix_to_json(result.best_q.matrix())},
          {"evaluations", result.evaluations},
          {"grid_spec", result.grid_spec}};
}

BenchSpec bench_spec_from_json(const json& j) {
  BenchSpec spec;
  if (!j.contains("dims")) throw std::invalid_argument("bench spec: missing \"dims\"");
  for (const auto& d : j.at("dims")) {
    if (!d.is_array() || d.size() != 3) {
      throw std::invalid_argument("bench spec: each dims entry must be [N_t, N_r, N_e]");
    }
    spec.dims.push_back({d[0].get<int>(), d[1].get<int>(), d[2].get<int>()});
  }
  spec.snr_db = j.value("snr_db", spec.snr_db);
  spec.n_trials = j.value("n_trials", spec.n_trials);
  spec.seed = j.value("seed", spec.seed);
  if (j.contains("solvers")) {
    spec.solvers.clear();
    for (const auto& s : j.at("solvers")) {
      const std::string name = s.get<std::string>();
      if (name == "apg") {
        spec.solvers.push_back(SolverKind::Apg);
      } else if (name == "pg_fixed") {
        spec.solvers.push_back(SolverKind::PgFixed);
      } else {
        throw std::invalid_argument("bench spec: unknown solver \"" + name + "\"");
      }
    }
  }
  if (j.contains("stopping")) {
    const json& st = j.at("stopping");
    spec.epsilon = st.value("epsilon", spec.epsilon);
    spec.window = st.value("window", spec.window);
    spec.max_iters = st.value("max_iters", spec.max_iters);
  }
  if (j.contains("degraded_scale")) {
    spec.degraded_scale = j.at("degraded_scale").get<double>();
  }
  return spec;
}

json bench_result_to_json(const BenchResult& result) {
  json records = json::array();
  for (const auto& r : result.records) {
    records.push_back({{"dims", {r.dims[0], r.dims[1], r.dims[2]}},
                       {"seed", r.seed},
                       {"solver", to_string(r.solver)},
                       {"iterations", r.iterations},
                       {"wall_time_s", r.wall_time_s},
                       {"final_objective", r.final_objective},
                       {"kkt_pass", r.kkt_pass}});
  }
  json aggregates = json::array();
  for (const auto& a : result.aggregates) {
    aggregates.push_back({{"dims", {a.dims[0], a.dims[1], a.dims[2]}},
                          {"solver", to_string(a.solver)},
                          {"mean_time_s", a.mean_time_s},
                          {"median_time_s", a.median_time_s},
                          {"mean_iterations", a.mean_iterations}});
  }
  return {{"records", std::move(records)}, {"aggregates", std::move(aggregates)}};
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << contents;
}

}  // namespace wtc
