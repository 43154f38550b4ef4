#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "cutrank/experiments.hpp"
#include "cutrank/graph.hpp"
#include "cutrank/maxcut.hpp"
#include "cutrank/sdp.hpp"
#include "cutrank/structure.hpp"

namespace cutrank {

// Graph files: {"n": <int>, "edges": [[i, j, w], ...]} with 0-based
// vertex indices. Rejects self-loops, duplicates, out-of-range indices and
// malformed entries, citing the offending edges[k] and the source name.
WeightedGraph graph_from_json(const nlohmann::json& j,
                              const std::string& source);
WeightedGraph parse_graph_json(const std::string& text,
                               const std::string& source);
WeightedGraph load_graph_file(const std::string& path);

nlohmann::json graph_to_json(const WeightedGraph& g);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& M);  // row-major nested
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Eigen::VectorXd& v);

nlohmann::json solution_to_json(const SdpSolution& sol);
nlohmann::json optimality_to_json(const OptimalityCheck& check);
nlohmann::json rank_report_to_json(const RankReport& rep);
nlohmann::json cut_result_to_json(const CutResult& r,
                                  std::optional<std::uint64_t> seed);
nlohmann::json cycle_analysis_to_json(const CycleAnalysis& a,
                                      std::optional<double> cut_value);
nlohmann::json diamond_analysis_to_json(const DiamondAnalysis& a);
nlohmann::json composition_to_json(const VertexSumComposition& comp,
                                   const OptimalityCheck& check,
                                   int rank_composed);
nlohmann::json sample_config_to_json(const SampleConfig& cfg);
nlohmann::json rank_distribution_to_json(const SampleConfig& cfg,
                                         const RankDistribution& dist);
// Columns: graph,mode,rank,count,fraction,excluded,seed,tol (one row per
// observed rank).
std::string rank_distribution_to_csv(const SampleConfig& cfg,
                                     const RankDistribution& dist);
nlohmann::json probe_report_to_json(const ConjectureProbeReport& rep);

}  // namespace cutrank
