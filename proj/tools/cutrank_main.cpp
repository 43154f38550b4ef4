// cutrank command-line tool: solve max-cut relaxations, analyze cycle and
// diamond rank structure, compose vertex sums, run seeded rank-distribution
// experiments, and probe the edge-sum dual composition.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cutrank/experiments.hpp"
#include "cutrank/io.hpp"
#include "cutrank/maxcut.hpp"
#include "cutrank/sdp.hpp"
#include "cutrank/structure.hpp"

namespace {

using cutrank::WeightedGraph;
using nlohmann::json;

struct GraphFlags {
  std::string name;
  std::string file;
  std::vector<double> weights;
};

void add_graph_flags(CLI::App* cmd, GraphFlags& flags,
                     const std::string& suffix = "") {
  auto* name = cmd->add_option("--graph" + suffix, flags.name,
                               "named graph (k3, c4, c5, c6, diamond, "
                               "butterfly, fish, kN, cN)");
  auto* file = cmd->add_option("--graph-file" + suffix, flags.file,
                               "graph JSON file {\"n\":..,\"edges\":[[i,j,w],..]}");
  cmd->add_option("--weights" + suffix, flags.weights,
                  "edge weights for --graph" + suffix +
                      " (documented edge order)")
      ->delimiter(',');
  name->excludes(file);
  file->excludes(name);
}

WeightedGraph graph_from_flags(const GraphFlags& flags) {
  if (!flags.file.empty()) {
    if (!flags.weights.empty())
      throw std::invalid_argument("--weights applies only to named graphs");
    return cutrank::load_graph_file(flags.file);
  }
  if (flags.name.empty())
    throw std::invalid_argument("no graph given (use --graph or --graph-file)");
  return cutrank::named_graph(flags.name, flags.weights);
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out)
    throw std::runtime_error(output_path + ": cannot open for writing");
  out << text;
}

void emit_json(const json& j, const std::string& output_path) {
  emit(j.dump(2), output_path);
}

// Renders a few headline fields; everything else stays in the json format.
std::string text_summary(const json& j, const std::vector<std::string>& keys) {
  std::string out;
  for (const auto& key : keys)
    if (j.contains(key)) out += key + ": " + j.at(key).dump() + "\n";
  return out;
}

void emit_report(const json& j, const std::string& format,
                 const std::vector<std::string>& text_keys,
                 const std::string& output_path) {
  if (format == "json")
    emit_json(j, output_path);
  else if (format == "text")
    emit(text_summary(j, text_keys), output_path);
  else
    throw std::invalid_argument("unknown format '" + format +
                                "' (expected json|text)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank structure of max-cut semidefinite relaxations"};
  app.require_subcommand(1);

  // ---- solve ----
  auto* solve_cmd = app.add_subcommand(
      "solve", "solve the max-cut relaxation and report the solution");
  GraphFlags solve_graph;
  add_graph_flags(solve_cmd, solve_graph);
  double solve_tol = 1e-8;
  int solve_max_iter = 200;
  double solve_rank_tol = 1e-6;
  std::string solve_output;
  std::string solve_format = "json";
  solve_cmd->add_option("--tol", solve_tol, "solver tolerance");
  solve_cmd->add_option("--format", solve_format, "json|text");
  solve_cmd->add_option("--max-iter", solve_max_iter, "iteration cap");
  solve_cmd->add_option("--rank-tol", solve_rank_tol, "rank tolerance");
  solve_cmd->add_option("--output", solve_output, "write report here");

  // ---- analyze-cycle ----
  auto* cycle_cmd = app.add_subcommand(
      "analyze-cycle", "rank-1 criterion for a weighted cycle");
  std::vector<double> cycle_weights;
  std::string cycle_output;
  std::string cycle_format = "json";
  cycle_cmd
      ->add_option("--weights", cycle_weights,
                   "weight of edge (i, i+1 mod n) for each i")
      ->delimiter(',')
      ->required();
  cycle_cmd->add_option("--format", cycle_format, "json|text");
  cycle_cmd->add_option("--output", cycle_output, "write report here");

  // ---- analyze-diamond ----
  auto* diamond_cmd = app.add_subcommand(
      "analyze-diamond", "regime classification for a weighted diamond");
  GraphFlags diamond_graph;
  std::vector<double> diamond_weights;
  std::string diamond_output;
  std::string diamond_format = "json";
  diamond_cmd
      ->add_option("--weights", diamond_weights,
                   "weights in edge order (0,1),(0,2),(1,2),(1,3),(2,3)")
      ->delimiter(',');
  diamond_cmd->add_option("--graph-file", diamond_graph.file,
                          "canonical diamond as a graph JSON file");
  diamond_cmd->add_option("--format", diamond_format, "json|text");
  diamond_cmd->add_option("--output", diamond_output, "write report here");

  // ---- compose-vertex-sum ----
  auto* compose_cmd = app.add_subcommand(
      "compose-vertex-sum",
      "solve two graphs and compose an optimal pair for their vertex sum "
      "(glued at the last vertex of graph 1 and the first of graph 2)");
  GraphFlags compose_g1, compose_g2;
  add_graph_flags(compose_cmd, compose_g1, "1");
  add_graph_flags(compose_cmd, compose_g2, "2");
  double compose_tol = 1e-9;
  double compose_rank_tol = 1e-6;
  std::string compose_output;
  compose_cmd->add_option("--tol", compose_tol, "solver tolerance");
  compose_cmd->add_option("--rank-tol", compose_rank_tol, "rank tolerance");
  compose_cmd->add_option("--output", compose_output, "write report here");

  // ---- sample ----
  auto* sample_cmd = app.add_subcommand(
      "sample", "rank distribution of a named graph under random weights");
  cutrank::SampleConfig cfg;
  std::string sample_mode = "arbitrary";
  std::string sample_format = "json";
  std::string sample_output;
  sample_cmd->add_option("--graph", cfg.graph_name, "named graph")->required();
  sample_cmd->add_option("--mode", sample_mode, "arbitrary|positive");
  sample_cmd->add_option("--samples", cfg.samples, "number of weight draws");
  sample_cmd->add_option("--seed", cfg.seed, "RNG seed")->required();
  sample_cmd->add_option("--rank-tol", cfg.rank_tol, "rank tolerance");
  sample_cmd->add_option("--tol", cfg.solver_tol, "solver tolerance");
  sample_cmd->add_option("--threads", cfg.threads,
                         "worker threads (output is independent of this)");
  sample_cmd->add_option("--format", sample_format, "json|csv");
  sample_cmd->add_option("--output", sample_output, "write report here");

  // ---- probe-conjecture ----
  auto* probe_cmd = app.add_subcommand(
      "probe-conjecture",
      "sample edge-sum instances (glued along the last two vertices of "
      "graph 1 and the first two of graph 2) and test the composed dual");
  GraphFlags probe_g1, probe_g2;
  add_graph_flags(probe_cmd, probe_g1, "1");
  add_graph_flags(probe_cmd, probe_g2, "2");
  long probe_samples = 100;
  std::uint64_t probe_seed = 0;
  std::string probe_mode = "arbitrary";
  std::string probe_output;
  probe_cmd->add_option("--samples", probe_samples, "number of weight draws");
  probe_cmd->add_option("--seed", probe_seed, "RNG seed")->required();
  probe_cmd->add_option("--mode", probe_mode, "arbitrary|positive");
  probe_cmd->add_option("--output", probe_output, "write report here");

  // ---- round ----
  auto* round_cmd = app.add_subcommand(
      "round", "solve and round with random hyperplanes");
  GraphFlags round_graph;
  add_graph_flags(round_cmd, round_graph);
  int round_trials = 100;
  std::uint64_t round_seed = 0;
  double round_tol = 1e-8;
  std::string round_output;
  std::string round_format = "json";
  round_cmd->add_option("--trials", round_trials, "hyperplane draws");
  round_cmd->add_option("--seed", round_seed, "RNG seed")->required();
  round_cmd->add_option("--tol", round_tol, "solver tolerance");
  round_cmd->add_option("--format", round_format, "json|text");
  round_cmd->add_option("--output", round_output, "write report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve_cmd) {
      const WeightedGraph g = graph_from_flags(solve_graph);
      const auto sol =
          cutrank::solve(cutrank::max_cut_sdp(g), {solve_tol, solve_max_iter});
      json report = cutrank::solution_to_json(sol);
      report["graph"] = cutrank::graph_to_json(g);
      report["rank"] =
          cutrank::rank_report_to_json(cutrank::rank_report(sol, solve_rank_tol));
      if (const auto cut = cutrank::recover_cut_if_rank1(sol, solve_rank_tol))
        report["cut"] = cutrank::cut_result_to_json(
            {*cut, cutrank::cut_value(g, *cut)}, std::nullopt);
      emit_report(report, solve_format,
                  {"status", "primal_value", "dual_value", "gap",
                   "iterations", "cut"},
                  solve_output);
    } else if (*cycle_cmd) {
      const auto analysis = cutrank::cycle_rank1_analysis(cycle_weights);
      std::optional<double> value;
      if (analysis.optimal_cut) {
        const WeightedGraph g = cutrank::cycle_graph(
            static_cast<int>(cycle_weights.size()), cycle_weights);
        value = cutrank::cut_value(g, *analysis.optimal_cut);
      }
      emit_report(cutrank::cycle_analysis_to_json(analysis, value),
                  cycle_format,
                  {"has_rank1", "reason", "dominant_index", "dominant_margin",
                   "optimal_cut", "cut_value"},
                  cycle_output);
    } else if (*diamond_cmd) {
      WeightedGraph g = [&] {
        if (!diamond_graph.file.empty()) {
          if (!diamond_weights.empty())
            throw std::invalid_argument(
                "give either --weights or --graph-file, not both");
          return cutrank::load_graph_file(diamond_graph.file);
        }
        return cutrank::named_graph("diamond", diamond_weights);
      }();
      emit_report(
          cutrank::diamond_analysis_to_json(cutrank::diamond_analysis(g)),
          diamond_format,
          {"regime", "condition_lhs", "condition_rhs", "x_star"},
          diamond_output);
    } else if (*compose_cmd) {
      const WeightedGraph g1 = graph_from_flags(compose_g1);
      const WeightedGraph g2 = graph_from_flags(compose_g2);
      const cutrank::SolveOptions opts{compose_tol, 300};
      const auto s1 = cutrank::solve(cutrank::max_cut_sdp(g1), opts);
      const auto s2 = cutrank::solve(cutrank::max_cut_sdp(g2), opts);
      if (s1.status != cutrank::SolveStatus::Converged ||
          s2.status != cutrank::SolveStatus::Converged)
        throw std::runtime_error("component solve did not converge");
      const auto comp = cutrank::compose_vertex_sum(s1.X, s1.S, s2.X, s2.S,
                                                    compose_rank_tol);
      const cutrank::CliqueSumSpec spec{
          g1, g2, {g1.vertex_count() - 1}, {0}};
      const auto summed = cutrank::vertex_sum(spec);
      const auto check = cutrank::check_optimality(
          cutrank::max_cut_sdp(summed.graph), comp.X_composed, comp.S_composed,
          1e-6);
      json report = cutrank::composition_to_json(
          comp, check,
          cutrank::numerical_rank(comp.X_composed, compose_rank_tol));
      report["graph"] = cutrank::graph_to_json(summed.graph);
      emit_json(report, compose_output);
    } else if (*sample_cmd) {
      cfg.mode = cutrank::weight_mode_from_string(sample_mode);
      const auto dist = cutrank::rank_distribution(cfg);
      if (sample_format == "csv")
        emit(cutrank::rank_distribution_to_csv(cfg, dist), sample_output);
      else if (sample_format == "json")
        emit_json(cutrank::rank_distribution_to_json(cfg, dist),
                  sample_output);
      else
        throw std::invalid_argument("unknown format '" + sample_format + "'");
    } else if (*probe_cmd) {
      const WeightedGraph g1 = graph_from_flags(probe_g1);
      const WeightedGraph g2 = graph_from_flags(probe_g2);
      const auto rep = cutrank::probe_edge_sum_conjecture(
          g1, g2, probe_samples, probe_seed,
          cutrank::weight_mode_from_string(probe_mode));
      emit_json(cutrank::probe_report_to_json(rep), probe_output);
    } else if (*round_cmd) {
      const WeightedGraph g = graph_from_flags(round_graph);
      const auto sol = cutrank::solve(cutrank::max_cut_sdp(g), {round_tol, 200});
      if (sol.status != cutrank::SolveStatus::Converged)
        throw std::runtime_error("solve did not converge");
      const auto best =
          cutrank::gw_round(g, sol, round_trials, round_seed, round_tol);
      json report = cutrank::cut_result_to_json(best, round_seed);
      report["sdp_value"] = cutrank::sdp_value(g, sol);
      emit_report(report, round_format, {"value", "sdp_value", "x", "seed"},
                  round_output);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
