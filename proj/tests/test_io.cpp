#include <doctest.h>

#include <string>

#include "cutrank/io.hpp"
#include "cutrank/maxcut.hpp"

using namespace cutrank;
using nlohmann::json;

TEST_CASE("graph json round trip") {
  const WeightedGraph g = named_graph("diamond", {1.0, 2.5, -0.5, 3.0, 4.0});
  const json j = graph_to_json(g);
  const WeightedGraph back = graph_from_json(j, "roundtrip");
  CHECK(back.vertex_count() == g.vertex_count());
  for (const auto& e : g.edges()) CHECK(back.weight(e.i, e.j) == e.w);
}

TEST_CASE("graph reader cites the offending edge") {
  const std::string dup =
      R"({"n": 3, "edges": [[0,1,1.0],[1,2,1.0],[1,0,2.0]]})";
  try {
    parse_graph_json(dup, "dup.json");
    FAIL("expected a duplicate-edge rejection");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("dup.json") != std::string::npos);
    CHECK(msg.find("edges[2]") != std::string::npos);
    CHECK(msg.find("duplicate") != std::string::npos);
  }

  const std::string loop = R"({"n": 3, "edges": [[0,1,1.0],[2,2,1.0]]})";
  try {
    parse_graph_json(loop, "loop.json");
    FAIL("expected a self-loop rejection");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("edges[1]") != std::string::npos);
    CHECK(msg.find("self-loop") != std::string::npos);
  }
}

TEST_CASE("graph reader rejects malformed input") {
  CHECK_THROWS_AS(parse_graph_json("{", "bad.json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph_json(R"({"edges": []})", "bad.json"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_graph_json(R"({"n": 2, "edges": [[0, 1]]})", "bad.json"),
      std::invalid_argument);
  CHECK_THROWS_AS(load_graph_file("/nonexistent/graph.json"),
                  std::invalid_argument);
}

TEST_CASE("matrix json round trip") {
  Eigen::MatrixXd M(2, 3);
  M << 1, 2, 3, 4, 5, 6.5;
  const Eigen::MatrixXd back = matrix_from_json(matrix_to_json(M));
  CHECK((M - back).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reports re-parse under their schema") {
  const WeightedGraph g = named_graph("k3");
  const auto sol = solve(max_cut_sdp(g));

  const json solution = json::parse(solution_to_json(sol).dump());
  CHECK(solution["status"] == "converged");
  CHECK(solution["X"].size() == 3);

  const json rank = json::parse(rank_report_to_json(rank_report(sol)).dump());
  CHECK(rank["rank_X"] == 2);
  CHECK(rank["strictly_complementary"] == true);

  const auto cut = brute_force_maxcut(g);
  const json cut_json = json::parse(cut_result_to_json(cut, 7).dump());
  CHECK(cut_json["value"] == 2.0);
  CHECK(cut_json["seed"] == 7);
  CHECK(cut_json["x"].size() == 3);

  const auto cyc = cycle_rank1_analysis({1.0, 1.0, -1.0});
  const json cyc_json = json::parse(cycle_analysis_to_json(cyc, 2.0).dump());
  CHECK(cyc_json["reason"] == "even-positives");
  CHECK(cyc_json["optimal_cut"].size() == 3);

  const auto dia =
      diamond_analysis(named_graph("diamond", {1.0, 1.0, 0.25, 1.0, 1.0}));
  const json dia_json = json::parse(diamond_analysis_to_json(dia).dump());
  CHECK(dia_json["regime"] == "aligned");
  CHECK(dia_json.contains("S_star"));

  SampleConfig cfg;
  cfg.graph_name = "k3";
  cfg.samples = 40;
  cfg.seed = 3;
  const auto dist = rank_distribution(cfg);
  const json dist_json =
      json::parse(rank_distribution_to_json(cfg, dist).dump());
  CHECK(dist_json["config"]["graph"] == "k3");
  long total = dist_json["excluded"].get<long>();
  for (const auto& [rank_str, count] : dist_json["counts"].items())
    total += count.get<long>();
  CHECK(total == 40);

  const auto probe = probe_edge_sum_conjecture(named_graph("k3"),
                                               named_graph("k3"), 10, 2);
  const json probe_json = json::parse(probe_report_to_json(probe).dump());
  CHECK(probe_json["samples"] == 10);
  CHECK(probe_json["agreements"] ==
        probe_json["matched_aligned_form"].get<long>() +
            probe_json["matched_flipped_form"].get<long>());
}

TEST_CASE("csv emitter shape") {
  SampleConfig cfg;
  cfg.graph_name = "c4";
  cfg.samples = 25;
  cfg.seed = 9;
  cfg.mode = WeightMode::Positive;
  const auto dist = rank_distribution(cfg);
  const std::string csv = rank_distribution_to_csv(cfg, dist);
  CHECK(csv.rfind("graph,mode,rank,count,fraction,excluded,seed,tol\n", 0) ==
        0);
  CHECK(csv.find("c4,positive,1,") != std::string::npos);
}
