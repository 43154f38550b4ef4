#include "cutrank/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cutrank {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

WeightedGraph graph_from_json(const json& j, const std::string& source) {
  auto fail = [&source](const std::string& msg) -> void {
    throw std::invalid_argument(source + ": " + msg);
  };
  if (!j.is_object()) fail("expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    fail("missing integer field \"n\"");
  if (!j.contains("edges") || !j["edges"].is_array())
    fail("missing array field \"edges\"");

  const int n = j["n"].get<int>();
  if (n < 1) fail("\"n\" must be >= 1");
  std::vector<WeightedEdge> edges;
  std::set<std::pair<int, int>> seen;
  const auto& arr = j["edges"];
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string at = "edges[" + std::to_string(k) + "]";
    const auto& e = arr[k];
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number())
      fail(at + ": expected [i, j, w]");
    const int a = e[0].get<int>();
    const int b = e[1].get<int>();
    const double w = e[2].get<double>();
    const std::string pair =
        " (" + std::to_string(a) + "," + std::to_string(b) + ")";
    if (a == b) fail(at + ": self-loop" + pair);
    if (a < 0 || a >= n || b < 0 || b >= n)
      fail(at + ": vertex out of range" + pair);
    if (!std::isfinite(w)) fail(at + ": non-finite weight" + pair);
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
      fail(at + ": duplicate edge" + pair);
    edges.push_back({a, b, w});
  }
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph parse_graph_json(const std::string& text,
                               const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(source + ": " + err.what());
  }
  return graph_from_json(j, source);
}

WeightedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph_json(ss.str(), path);
}

json graph_to_json(const WeightedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.i, e.j, e.w});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

json matrix_to_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix: expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw std::invalid_argument("matrix: ragged rows");
    for (Eigen::Index k = 0; k < cols; ++k) M(i, k) = j[i][k].get<double>();
  }
  return M;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json solution_to_json(const SdpSolution& sol) {
  return {{"status", to_string(sol.status)},
          {"iterations", sol.iterations},
          {"primal_value", sol.primal_value},
          {"dual_value", sol.dual_value},
          {"gap", sol.gap},
          {"X", matrix_to_json(sol.X)},
          {"S", matrix_to_json(sol.S)},
          {"y", vector_to_json(sol.y)}};
}

json optimality_to_json(const OptimalityCheck& check) {
  return {{"optimal", check.optimal()},
          {"tol", check.tol},
          {"primal_diag_residual", check.primal_diag_residual},
          {"primal_psd_residual", check.primal_psd_residual},
          {"dual_structure_residual", check.dual_structure_residual},
          {"dual_psd_residual", check.dual_psd_residual},
          {"complementarity_residual", check.complementarity_residual}};
}

json rank_report_to_json(const RankReport& rep) {
  return {{"rank_X", rep.rank_X},
          {"rank_S", rep.rank_S},
          {"eigenvalues_X", vector_to_json(rep.eigenvalues_X)},
          {"eigenvalues_S", vector_to_json(rep.eigenvalues_S)},
          {"strictly_complementary", rep.strictly_complementary},
          {"tolerance", rep.tolerance_used},
          {"exceeds_pataki_bound", rep.exceeds_pataki_bound}};
}

json cut_result_to_json(const CutResult& r,
                        std::optional<std::uint64_t> seed) {
  json x = json::array();
  for (Eigen::Index i = 0; i < r.cut.size(); ++i)
    x.push_back(static_cast<int>(r.cut(i)));
  json out = {{"x", x}, {"value", r.value}};
  if (seed) out["seed"] = *seed;
  return out;
}

json cycle_analysis_to_json(const CycleAnalysis& a,
                            std::optional<double> cut_value) {
  json out = {{"has_rank1", a.has_rank1},
              {"reason", to_string(a.reason)},
              {"dominant_index", a.dominant_index},
              {"dominant_margin", a.dominant_margin}};
  if (a.optimal_cut) {
    json x = json::array();
    for (Eigen::Index i = 0; i < a.optimal_cut->size(); ++i)
      x.push_back(static_cast<int>((*a.optimal_cut)(i)));
    out["optimal_cut"] = x;
  }
  if (cut_value) out["cut_value"] = *cut_value;
  return out;
}

json diamond_analysis_to_json(const DiamondAnalysis& a) {
  json out = {{"regime", to_string(a.regime)}, {"condition_lhs", a.condition_lhs}};
  // Thresholds can be +inf (vanishing denominators); those keys are omitted.
  if (std::isfinite(a.condition_rhs)) out["condition_rhs"] = a.condition_rhs;
  if (std::isfinite(a.aligned_threshold))
    out["aligned_threshold"] = a.aligned_threshold;
  if (std::isfinite(a.flipped_threshold))
    out["flipped_threshold"] = a.flipped_threshold;
  if (a.x_star) {
    json x = json::array();
    for (Eigen::Index i = 0; i < a.x_star->size(); ++i)
      x.push_back(static_cast<int>((*a.x_star)(i)));
    out["x_star"] = x;
  }
  if (a.S_star) out["S_star"] = matrix_to_json(*a.S_star);
  return out;
}

json composition_to_json(const VertexSumComposition& comp,
                         const OptimalityCheck& check, int rank_composed) {
  return {{"X_composed", matrix_to_json(comp.X_composed)},
          {"S_composed", matrix_to_json(comp.S_composed)},
          {"rank_formula_value", comp.rank_formula_value},
          {"rank_X_composed", rank_composed},
          {"optimality", optimality_to_json(check)}};
}

json sample_config_to_json(const SampleConfig& cfg) {
  return {{"graph", cfg.graph_name},
          {"mode", to_string(cfg.mode)},
          {"samples", cfg.samples},
          {"seed", cfg.seed},
          {"rank_tol", cfg.rank_tol},
          {"solver_tol", cfg.solver_tol},
          {"max_iter", cfg.max_iter}};
}

json rank_distribution_to_json(const SampleConfig& cfg,
                               const RankDistribution& dist) {
  json counts = json::object();
  json fractions = json::object();
  for (const auto& [rank, count] : dist.counts) {
    counts[std::to_string(rank)] = count;
    fractions[std::to_string(rank)] = dist.fractions.at(rank);
  }
  return {{"config", sample_config_to_json(cfg)},
          {"counts", counts},
          {"fractions", fractions},
          {"excluded", dist.excluded}};
}

std::string rank_distribution_to_csv(const SampleConfig& cfg,
                                     const RankDistribution& dist) {
  std::string out = "graph,mode,rank,count,fraction,excluded,seed,tol\n";
  for (const auto& [rank, count] : dist.counts) {
    out += cfg.graph_name + "," + to_string(cfg.mode) + "," +
           std::to_string(rank) + "," + std::to_string(count) + "," +
           fmt_double(dist.fractions.at(rank)) + "," +
           std::to_string(dist.excluded) + "," + std::to_string(cfg.seed) +
           "," + fmt_double(cfg.rank_tol) + "\n";
  }
  return out;
}

json probe_report_to_json(const ConjectureProbeReport& rep) {
  json counterexamples = json::array();
  for (const auto& w : rep.counterexamples)
    counterexamples.push_back(vector_to_json(w));
  return {{"samples", rep.samples},
          {"skipped", rep.skipped},
          {"matched_aligned_form", rep.matched_aligned_form},
          {"matched_flipped_form", rep.matched_flipped_form},
          {"agreements", rep.matched_aligned_form + rep.matched_flipped_form},
          {"disagreements", rep.disagreements},
          {"counterexamples", counterexamples},
          {"seed", rep.seed}};
}

}  // namespace cutrank
