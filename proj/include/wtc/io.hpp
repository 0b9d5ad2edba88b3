#pragma once

#include <string>

#include <json.hpp>

#include "wtc/bench.hpp"
#include "wtc/channel.hpp"
#include "wtc/kkt.hpp"
#include "wtc/oracle.hpp"
#include "wtc/solver.hpp"

namespace wtc {

// Complex matrices are stored row-major, each entry a [re, im] pair:
//   { "H": [[[re,im], ...], ...], "G": [[[re,im], ...], ...] }
// Loaders validate rectangularity and finiteness and name the offending
// row/field in the diagnostic.
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json channel_to_json(const ChannelPair& ch);
ChannelPair channel_from_json(const nlohmann::json& j);

ChannelPair load_channel(const std::string& path);
void save_channel(const ChannelPair& ch, const std::string& path);

Eigen::MatrixXcd load_matrix(const std::string& path, const std::string& field);

nlohmann::json kkt_report_to_json(const KKTReport& report);
nlohmann::json solve_result_to_json(const SolveResult& result);
nlohmann::json uniqueness_report_to_json(const UniquenessReport& report);
nlohmann::json oracle_result_to_json(const OracleResult& result);

BenchSpec bench_spec_from_json(const nlohmann::json& j);
nlohmann::json bench_result_to_json(const BenchResult& result);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace wtc
