// Acceptance suite: runs every gate criterion end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.
// argv[1] is the path to the cutrank CLI binary (used by the determinism
// and interface checks).

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cutrank/experiments.hpp"
#include "cutrank/io.hpp"
#include "cutrank/maxcut.hpp"
#include "cutrank/sdp.hpp"
#include "cutrank/structure.hpp"

using namespace cutrank;

namespace {

struct Harness {
  int failures = 0;
  std::chrono::steady_clock::time_point t0;

  void begin() { t0 = std::chrono::steady_clock::now(); }

  void criterion(int k, const std::string& name, bool pass,
                 const std::string& detail) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] criterion %2d: %s (%s; %.1fs)\n",
                pass ? "PASS" : "FAIL", k, name.c_str(), detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

WeightedGraph random_graph(CounterRng& rng, int n, WeightMode mode) {
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < 0.6) edges.push_back({i, j, 1.0});
  if (edges.empty()) edges.push_back({0, 1, 1.0});
  WeightedGraph g(n, std::move(edges));
  return g.with_weights(sample_weights(g.edge_count(), mode, rng));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------- 1 ----
void solver_correctness(Harness& h) {
  h.begin();
  CounterRng rng(1001);
  int bad = 0;
  std::string first_bad;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 9;
    const auto mode =
        trial % 2 == 0 ? WeightMode::Arbitrary : WeightMode::Positive;
    const WeightedGraph g = random_graph(rng, n, mode);
    const auto sol = solve(max_cut_sdp(g), {1e-8, 200});
    const double feas = std::max(
        {(sol.X.diagonal().array() - 1.0).abs().maxCoeff(),
         std::max(0.0, -symmetric_eigenvalues(sol.X)(0)),
         std::max(0.0, -symmetric_eigenvalues(sol.S)(0))});
    const bool ok = sol.status == SolveStatus::Converged &&
                    std::abs(sol.gap) <= 1e-6 && feas <= 1e-6 &&
                    sdp_value(g, sol) >= brute_force_maxcut(g).value - 1e-6;
    if (!ok && bad++ == 0)
      first_bad = "trial " + std::to_string(trial) + " gap=" + fmt(sol.gap);
  }
  h.criterion(1, "solver converges with certified bounds on 500 instances",
              bad == 0,
              bad == 0 ? "500/500 within 1e-6" : first_bad);
}

// ---------------------------------------------------------------- 2 ----
void optimality_conditions(Harness& h) {
  h.begin();
  CounterRng rng(1002);
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const WeightedGraph g = random_graph(
        rng, 2 + trial % 8,
        trial % 2 == 0 ? WeightMode::Arbitrary : WeightMode::Positive);
    const auto sol = solve(max_cut_sdp(g), {1e-8, 200});
    // feasibility is maintained exactly; complementarity scales like the
    // square root of the gap tolerance
    const auto check = check_optimality(max_cut_sdp(g), sol.X, sol.S, 1e-4);
    const bool feasible = check.primal_diag_residual <= 1e-6 &&
                          check.primal_psd_residual <= 1e-6 &&
                          check.dual_structure_residual <= 1e-6 &&
                          check.dual_psd_residual <= 1e-6;
    if (sol.status != SolveStatus::Converged || !check.optimal() || !feasible)
      ++bad;
  }

  // planted violations must be rejected at the same tolerance
  const WeightedGraph g2(2, {{0, 1, 1.0}});
  Eigen::MatrixXd X(2, 2), S(2, 2);
  X << 1, -1, -1, 1;
  S << 0.25, 0.25, 0.25, 0.25;
  Eigen::MatrixXd Xbad = X;
  Xbad(0, 0) = 0.9;  // perturbed diagonal
  const bool reject_diag =
      !check_optimality(max_cut_sdp(g2), Xbad, S, 1e-4);
  Eigen::MatrixXd Sbad = S;
  Sbad(0, 1) = Sbad(1, 0) = 0.6;  // indefinite dual slack
  const bool reject_psd = !check_optimality(max_cut_sdp(g2), X, Sbad, 1e-4);
  const SdpProblem zero{Eigen::MatrixXd::Zero(3, 3)};
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(3, 3);
  const bool reject_comp = !check_optimality(zero, I, I, 1e-4);

  const bool pass = bad == 0 && reject_diag && reject_psd && reject_comp;
  h.criterion(2, "optimality conditions verified and counterexamples rejected",
              pass,
              "accepted " + std::to_string(100 - bad) +
                  "/100, planted rejections " +
                  std::to_string(reject_diag + reject_psd + reject_comp) +
                  "/3");
}

// ---------------------------------------------------------------- 3 ----
void cycle_equivalence(Harness& h) {
  h.begin();
  long checked = 0, agree = 0, boundary = 0, failed_adjudication = 0;
  for (int n = 3; n <= 8; ++n) {
    for (long i = 0; i < 1000; ++i) {
      CounterRng rng(3000 + static_cast<std::uint64_t>(n),
                     static_cast<std::uint64_t>(i));
      const Eigen::VectorXd wv =
          sample_weights(n, WeightMode::Arbitrary, rng);
      const std::vector<double> w(wv.data(), wv.data() + n);
      const auto analysis = cycle_rank1_analysis(w);
      if (std::abs(analysis.dominant_margin) < 1e-6) {
        ++boundary;
        continue;
      }
      const WeightedGraph g = cycle_graph(n, w);
      const auto sol = solve(max_cut_sdp(g), {1e-8, 200});
      if (sol.status != SolveStatus::Converged) {
        ++boundary;
        continue;
      }
      ++checked;
      const bool solver_rank1 = rank_report(sol, 1e-6).rank_X == 1;
      if (solver_rank1 == analysis.has_rank1) {
        ++agree;
        continue;
      }
      // adjudicate via the certificate, whose verdict is exact
      if (analysis.has_rank1) {
        if (!rank1_certificate(g, *analysis.optimal_cut, 1e-8))
          ++failed_adjudication;
      } else {
        const auto rec = recover_cut_if_rank1(sol, 1e-6);
        if (rec && rank1_certificate(g, *rec, 1e-12)) ++failed_adjudication;
      }
    }
  }
  const double rate = checked > 0 ? double(agree) / double(checked) : 0.0;
  h.criterion(3, "cycle criterion matches the solver on 6000 cycles",
              rate >= 0.99 && failed_adjudication == 0,
              "agreement " + fmt(100.0 * rate) + "% of " +
                  std::to_string(checked) + " (boundary/skipped " +
                  std::to_string(boundary) + ", adjudication failures " +
                  std::to_string(failed_adjudication) + ")");
}

// ---------------------------------------------------------------- 4 ----
void k3_probabilities(Harness& h) {
  h.begin();
  const double arb =
      cycle_condition_probability(3, WeightMode::Arbitrary, 100000, 4001);
  const double pos =
      cycle_condition_probability(3, WeightMode::Positive, 100000, 4002);
  const double arb_ref = k3_analytic_probability(WeightMode::Arbitrary);
  const double pos_ref = k3_analytic_probability(WeightMode::Positive);
  const bool pass =
      std::abs(arb - arb_ref) <= 0.01 && std::abs(pos - pos_ref) <= 0.01;
  h.criterion(4, "triangle probabilities match the closed forms", pass,
              "arbitrary " + fmt(arb) + " vs " + fmt(arb_ref) +
                  ", positive " + fmt(pos) + " vs " + fmt(pos_ref));
}

// ---------------------------------------------------------------- 5 ----
struct TableRow {
  std::string graph;
  WeightMode mode;
  std::map<int, double> reference;  // published fractions, rounded to 1%
};

void table_reproduction(Harness& h) {
  h.begin();
  const std::vector<TableRow> rows = {
      {"k3", WeightMode::Arbitrary, {{1, 0.85}, {2, 0.15}, {3, 0.0}}},
      {"k3", WeightMode::Positive, {{1, 0.69}, {2, 0.31}, {3, 0.0}}},
      {"c4", WeightMode::Arbitrary, {{1, 0.77}, {2, 0.23}, {3, 0.0}}},
      {"c4", WeightMode::Positive, {{1, 1.00}, {2, 0.0}, {3, 0.0}}},
      {"diamond", WeightMode::Arbitrary, {{1, 0.71}, {2, 0.29}, {3, 0.0}}},
      {"diamond", WeightMode::Positive, {{1, 0.65}, {2, 0.35}, {3, 0.0}}},
      {"c5", WeightMode::Arbitrary, {{1, 0.73}, {2, 0.27}, {3, 0.0}}},
      {"c5", WeightMode::Positive, {{1, 0.45}, {2, 0.55}, {3, 0.0}}},
      {"butterfly", WeightMode::Arbitrary, {{1, 0.72}, {2, 0.25}, {3, 0.03}}},
      {"butterfly", WeightMode::Positive, {{1, 0.50}, {2, 0.42}, {3, 0.08}}},
      {"c6", WeightMode::Arbitrary, {{1, 0.70}, {2, 0.30}, {3, 0.0}}},
      {"c6", WeightMode::Positive, {{1, 1.00}, {2, 0.0}, {3, 0.0}}},
      {"fish", WeightMode::Arbitrary, {{1, 0.62}, {2, 0.34}, {3, 0.04}}},
      {"fish", WeightMode::Positive, {{1, 0.69}, {2, 0.31}, {3, 0.0}}},
  };

  const double z99 = 2.5758293035489004;
  const double rounding_slop = 0.005;  // published values carry 1% rounding
  int deviations = 0;
  bool hard_ok = true;
  std::string note;

  for (const auto& row : rows) {
    SampleConfig cfg;
    cfg.graph_name = row.graph;
    cfg.mode = row.mode;
    cfg.samples = 1000;
    cfg.seed = 5005;
    cfg.threads = 4;
    const auto dist = rank_distribution(cfg);
    const long counted = cfg.samples - dist.excluded;

    // hard sub-criteria
    if (row.mode == WeightMode::Positive &&
        (row.graph == "c4" || row.graph == "c6")) {
      if (!(dist.fractions.count(1) && dist.fractions.at(1) == 1.0)) {
        hard_ok = false;
        note += row.graph + "-positive not all rank-1; ";
      }
    }
    if (row.graph == "butterfly" && row.mode == WeightMode::Arbitrary) {
      if (!(dist.counts.count(3) && dist.counts.at(3) > 0)) {
        hard_ok = false;
        note += "butterfly-arbitrary has no rank-3 samples; ";
      }
    }

    for (const auto& [rank, p] : row.reference) {
      const double observed =
          dist.fractions.count(rank) ? dist.fractions.at(rank) : 0.0;
      const double half_width =
          z99 * std::sqrt(p * (1.0 - p) / double(counted)) + rounding_slop;
      if (std::abs(observed - p) > half_width) {
        ++deviations;
        std::printf(
            "  table deviation: %s/%s rank %d observed %.4f vs published "
            "%.2f (99%% band +/-%.4f); tolerance sweep:",
            row.graph.c_str(), to_string(row.mode).c_str(), rank, observed,
            p, half_width);
        for (double sweep_tol : {1e-5, 1e-6, 1e-7}) {
          SampleConfig sweep = cfg;
          sweep.rank_tol = sweep_tol;
          const auto swept = rank_distribution(sweep);
          const double f =
              swept.fractions.count(rank) ? swept.fractions.at(rank) : 0.0;
          std::printf(" tol=%.0e -> %.4f (excl %ld)", sweep_tol, f,
                      swept.excluded);
        }
        // vertex sums obey the product law, which gives an independent
        // reference for where the fraction should sit
        if (row.graph == "butterfly" || row.graph == "fish") {
          const double p3 =
              cycle_condition_probability(3, row.mode, 200000, 4242);
          const double pc = row.graph == "butterfly"
                                ? p3
                                : cycle_condition_probability(4, row.mode,
                                                              200000, 4242);
          const std::map<int, double> law = {{1, p3 * pc},
                                             {2, p3 * (1 - pc) + (1 - p3) * pc},
                                             {3, (1 - p3) * (1 - pc)}};
          std::printf("; product law -> %.4f", law.at(rank));
        }
        std::printf("\n");
      }
    }
  }
  h.criterion(5, "published rank table reproduced at 1000 samples",
              hard_ok,
              note.empty()
                  ? (deviations == 0
                         ? "all 14 rows within the 99% bands"
                         : std::to_string(deviations) +
                               " cells outside the band, sweeps documented "
                               "above")
                  : note);
}

// ---------------------------------------------------------------- 6 ----
void vertex_sum_theorem(Harness& h) {
  h.begin();
  CounterRng rng(1006);
  int done = 0, bad = 0, redraws = 0;
  std::string first_bad;
  while (done < 200 && redraws < 4000) {
    const int n1 = 2 + static_cast<int>(rng.next_u64() % 5);
    const int n2 = 2 + static_cast<int>(rng.next_u64() % 5);
    const auto mode =
        done % 2 == 0 ? WeightMode::Arbitrary : WeightMode::Positive;
    const WeightedGraph g1 = random_graph(rng, n1, mode);
    const WeightedGraph g2 = random_graph(rng, n2, mode);
    const auto s1 = solve(max_cut_sdp(g1), {1e-10, 300});
    const auto s2 = solve(max_cut_sdp(g2), {1e-10, 300});
    if (s1.status != SolveStatus::Converged ||
        s2.status != SolveStatus::Converged) {
      ++redraws;
      continue;
    }
    const auto r1 = rank_report(s1, 1e-6);
    const auto r2 = rank_report(s2, 1e-6);
    if (rank_is_ambiguous(r1.eigenvalues_X, 1e-6) ||
        rank_is_ambiguous(r2.eigenvalues_X, 1e-6)) {
      ++redraws;
      continue;
    }
    ++done;
    const auto comp = compose_vertex_sum(s1.X, s1.S, s2.X, s2.S, 1e-6);
    const CliqueSumSpec spec{g1, g2, {n1 - 1}, {0}};
    const WeightedGraph summed = vertex_sum(spec).graph;
    // components solved to 1e-10, so composed complementarity ~ sqrt of that
    const auto check = check_optimality(max_cut_sdp(summed), comp.X_composed,
                                        comp.S_composed, 1e-5);
    const int rank_composed = numerical_rank(comp.X_composed, 1e-6);
    const bool ok = check.optimal() &&
                    rank_composed == r1.rank_X + r2.rank_X - 1 &&
                    comp.rank_formula_value == r1.rank_X + r2.rank_X - 1;
    if (!ok && bad++ == 0)
      first_bad = "pair " + std::to_string(done) + ": rank " +
                  std::to_string(rank_composed) + " vs " +
                  std::to_string(r1.rank_X + r2.rank_X - 1) +
                  (check.optimal() ? "" : ", optimality failed");
  }
  h.criterion(6, "vertex-sum composition is optimal with exact rank formula",
              bad == 0 && done == 200,
              bad == 0 ? "200/200 pairs (redraws " + std::to_string(redraws) +
                             ")"
                       : first_bad);
}

// ---------------------------------------------------------------- 7 ----
void butterfly_distribution(Harness& h) {
  h.begin();
  const double z99 = 2.5758293035489004;
  bool pass = true;
  std::string detail;

  auto law_check = [&](const std::string& graph, long samples,
                       std::uint64_t seed, double component_p,
                       double extra_slop) {
    SampleConfig cfg;
    cfg.graph_name = graph;
    cfg.mode = WeightMode::Arbitrary;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.threads = 4;
    const auto dist = rank_distribution(cfg);
    const long counted = cfg.samples - dist.excluded;
    const double p1 = k3_analytic_probability(WeightMode::Arbitrary);
    const std::map<int, double> expected = {
        {1, p1 * component_p},
        {2, p1 * (1.0 - component_p) + (1.0 - p1) * component_p},
        {3, (1.0 - p1) * (1.0 - component_p)}};
    detail += graph + ":";
    for (const auto& [rank, p] : expected) {
      const double observed =
          dist.fractions.count(rank) ? dist.fractions.at(rank) : 0.0;
      const double half =
          z99 * std::sqrt(p * (1.0 - p) / double(counted)) + extra_slop;
      if (std::abs(observed - p) > half) pass = false;
      detail += " r" + std::to_string(rank) + " " + fmt(observed) + "/" +
                fmt(p);
    }
    detail += " (excl " + std::to_string(dist.excluded) + ") ";
  };

  // butterfly components are two triangles with the closed-form probability
  law_check("butterfly", 10000, 7001,
            k3_analytic_probability(WeightMode::Arbitrary), 0.0);
  // fish glues a triangle to a 4-cycle; the 4-cycle rank-1 probability is
  // estimated from the combinatorial criterion (300k draws, +-0.003 slop)
  const double p_c4 =
      cycle_condition_probability(4, WeightMode::Arbitrary, 300000, 7002);
  law_check("fish", 5000, 7003, p_c4, 0.003);

  h.criterion(7, "vertex-sum ranks follow the product law", pass, detail);
}

// ---------------------------------------------------------------- 8 ----
// The aligned inequality is exactly the statement that both triangle optima
// keep the shared edge uncut, and then the glued cut is certified optimal.
// When the triangle optima cut the shared edge, the flipped inequality is
// equivalent to some (e1,-1,1,e2) cut being certified optimal; between the
// two thresholds neither theorem applies and the classifier reports
// Neither. Each direction is tested against the certificate and the
// brute-force oracle.
void diamond_theorems(Harness& h) {
  h.begin();
  const WeightedGraph topology = named_graph("diamond");
  long found = 0, bad = 0, boundary = 0;
  long aligned_n = 0, flipped_n = 0, neither_n = 0;
  std::uint64_t draw = 0;
  std::string first_bad;
  Eigen::VectorXd x_aligned(4);
  x_aligned << -1, 1, 1, -1;
  while (found < 500 && draw < 100000) {
    CounterRng rng(8001, draw++);
    const Eigen::VectorXd w = sample_weights(5, WeightMode::Positive, rng);
    const double a = w(0), b = w(1), c = w(2), d = w(3), e = w(4);
    const auto t1 = cycle_rank1_analysis({a, c, b});
    const auto t2 = cycle_rank1_analysis({c, e, d});
    if (!t1.has_rank1 || !t2.has_rank1) continue;
    const double shared1 = (*t1.optimal_cut)(1) * (*t1.optimal_cut)(2);
    const double shared2 = (*t2.optimal_cut)(0) * (*t2.optimal_cut)(1);
    if (shared1 != shared2) continue;

    const double aligned_rhs =
        std::min(1.0 / (1.0 / a + 1.0 / b), 1.0 / (1.0 / d + 1.0 / e));
    const double da = std::abs(1.0 / a - 1.0 / b);
    const double de = std::abs(1.0 / d - 1.0 / e);
    const double flipped_rhs =
        (da == 0.0 || de == 0.0)
            ? std::numeric_limits<double>::infinity()
            : 1.0 / da + 1.0 / de;
    if (std::abs(c - aligned_rhs) < 1e-9 ||
        (std::isfinite(flipped_rhs) && std::abs(c - flipped_rhs) < 1e-9)) {
      ++boundary;
      continue;
    }
    ++found;

    const WeightedGraph g = topology.with_weights(w);
    const bool aligned_cond = c <= aligned_rhs;
    const bool flipped_cond = c >= flipped_rhs;
    const double bf = brute_force_maxcut(g).value;
    const auto analysis = diamond_analysis(g);

    std::string why;
    bool ok = true;
    auto check_dual = [&](const char* what) {
      const Eigen::MatrixXd& S = *analysis.S_star;
      const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
      if ((S * (*analysis.x_star)).cwiseAbs().maxCoeff() > 1e-8 ||
          symmetric_eigenvalues(S)(0) < -1e-8 * scale) {
        ok = false;
        why = what;
      }
    };

    // the aligned inequality holds iff the triangle optima keep the shared
    // edge uncut (both directions of the claim)
    if (aligned_cond != (shared1 > 0.0)) {
      ok = false;
      why = "aligned condition vs shared-edge agreement";
    }

    if (shared1 > 0.0) {
      ++aligned_n;
      const bool cert = rank1_certificate(g, x_aligned, 1e-10);
      if (!cert ||
          std::abs(cut_value(g, x_aligned) - bf) > 1e-9 * std::max(1.0, bf)) {
        ok = false;
        why = "aligned cut not certified optimal";
      }
      if (analysis.regime != DiamondRegime::Aligned) {
        ok = false;
        why = "aligned classification";
      } else {
        check_dual("aligned dual certificate");
      }
    } else {
      bool cert_flipped = false;
      Eigen::VectorXd x_flip(4);
      for (double e1 : {1.0, -1.0})
        for (double e2 : {1.0, -1.0}) {
          Eigen::VectorXd cand(4);
          cand << e1, -1, 1, e2;
          if (rank1_certificate(g, cand, 1e-10)) {
            cert_flipped = true;
            x_flip = cand;
          }
        }
      if (flipped_cond != cert_flipped) {
        ok = false;
        why = "flipped equivalence";
      }
      if (flipped_cond) {
        ++flipped_n;
        if (cert_flipped &&
            std::abs(cut_value(g, x_flip) - bf) > 1e-9 * std::max(1.0, bf)) {
          ok = false;
          why = "flipped cut not a maximizer";
        }
        if (analysis.regime != DiamondRegime::Flipped) {
          ok = false;
          why = "flipped classification";
        } else {
          check_dual("flipped dual certificate");
        }
      } else {
        ++neither_n;
        if (analysis.regime != DiamondRegime::Neither) {
          ok = false;
          why = "neither classification";
        }
      }
    }
    if (!ok && bad++ == 0)
      first_bad = why + " at draw " + std::to_string(draw - 1);
  }
  h.criterion(
      8, "diamond regimes are equivalent to optimality on 500 diamonds",
      bad == 0 && found == 500,
      bad == 0 ? "aligned/flipped/neither " + std::to_string(aligned_n) +
                     "/" + std::to_string(flipped_n) + "/" +
                     std::to_string(neither_n) + ", boundary skipped " +
                     std::to_string(boundary)
               : first_bad);
}

// ---------------------------------------------------------------- 9 ----
void rounding_guarantee(Harness& h) {
  h.begin();
  CounterRng rng(1009);
  int bad = 0;
  double worst_ratio = 1.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 9;
    const WeightedGraph g = random_graph(rng, n, WeightMode::Positive);
    const auto sol = solve(max_cut_sdp(g), {1e-8, 200});
    if (sol.status != SolveStatus::Converged) {
      ++bad;
      continue;
    }
    const auto best = gw_round(g, sol, 100, 9000 + trial);
    const double bf = brute_force_maxcut(g).value;
    const double ratio = bf > 0 ? best.value / bf : 1.0;
    worst_ratio = std::min(worst_ratio, ratio);
    if (best.value < 0.878 * bf - 1e-12 ||
        best.value > sdp_value(g, sol) + 1e-6)
      ++bad;
  }
  h.criterion(9, "hyperplane rounding clears the guarantee on 100 graphs",
              bad == 0, "worst best/opt ratio " + fmt(worst_ratio));
}

// --------------------------------------------------------------- 10 ----
std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

void determinism(Harness& h, const std::string& cli) {
  h.begin();
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() /
      ("cutrank_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  bool pass = true;
  std::string detail;

  auto expect_same = [&](const std::string& args_a,
                         const std::string& args_b, const fs::path& fa,
                         const fs::path& fb, const char* what) {
    if (run_cli(cli, args_a) != 0 || run_cli(cli, args_b) != 0) {
      pass = false;
      detail += std::string(what) + " run failed; ";
      return;
    }
    const std::string a = read_file(fa);
    const std::string b = read_file(fb);
    if (a.empty() || a != b) {
      pass = false;
      detail += std::string(what) + " not byte-identical; ";
    }
  };

  const std::string base =
      "sample --graph butterfly --mode arbitrary --samples 300 --seed 7 "
      "--format csv --output ";
  expect_same(base + (dir / "s1.csv").string(),
              base + (dir / "s2.csv").string(), dir / "s1.csv",
              dir / "s2.csv", "seeded sample rerun");
  expect_same(base + (dir / "s3.csv").string() + " --threads 1",
              base + (dir / "s4.csv").string() + " --threads 4",
              dir / "s3.csv", dir / "s4.csv", "threads 1 vs 4");

  const std::string round_base =
      "round --graph c5 --trials 50 --seed 3 --output ";
  expect_same(round_base + (dir / "r1.json").string(),
              round_base + (dir / "r2.json").string(), dir / "r1.json",
              dir / "r2.json", "seeded round rerun");

  const std::string probe_base =
      "probe-conjecture --graph1 k3 --graph2 k3 --samples 25 --seed 5 "
      "--mode positive --output ";
  expect_same(probe_base + (dir / "p1.json").string(),
              probe_base + (dir / "p2.json").string(), dir / "p1.json",
              dir / "p2.json", "seeded probe rerun");

  // emitted reports re-parse, --help everywhere, unknown flags error
  if (run_cli(cli, "solve --graph k3 --output " +
                       (dir / "solve.json").string()) != 0) {
    pass = false;
    detail += "solve run failed; ";
  } else {
    try {
      const auto j = nlohmann::json::parse(read_file(dir / "solve.json"));
      if (!j.contains("rank") || !j.contains("X")) {
        pass = false;
        detail += "solve report missing keys; ";
      }
    } catch (const std::exception&) {
      pass = false;
      detail += "solve report did not re-parse; ";
    }
  }

  // graph files round-trip through the solver
  {
    std::ofstream gf(dir / "k3.json");
    gf << graph_to_json(named_graph("k3")).dump();
    gf.close();
    if (run_cli(cli, "solve --graph-file " + (dir / "k3.json").string() +
                         " --output " + (dir / "solve_file.json").string()) !=
        0) {
      pass = false;
      detail += "graph-file solve failed; ";
    } else {
      try {
        const auto j =
            nlohmann::json::parse(read_file(dir / "solve_file.json"));
        if (std::abs(j.at("primal_value").get<double>() - 2.25) > 1e-6) {
          pass = false;
          detail += "graph-file solve value off; ";
        }
      } catch (const std::exception&) {
        pass = false;
        detail += "graph-file report did not re-parse; ";
      }
    }
  }
  for (const char* sub :
       {"solve", "analyze-cycle", "analyze-diamond", "compose-vertex-sum",
        "sample", "probe-conjecture", "round"}) {
    if (run_cli(cli, std::string(sub) + " --help") != 0) {
      pass = false;
      detail += std::string(sub) + " --help failed; ";
    }
  }
  if (run_cli(cli, "solve --graph k3 --no-such-flag") != 2) {
    pass = false;
    detail += "unknown flag not a usage error; ";
  }
  if (run_cli(cli, "solve --graph-file /nonexistent.json") != 1) {
    pass = false;
    detail += "bad file not a domain error; ";
  }

  fs::remove_all(dir);
  h.criterion(10, "seeded commands are byte-deterministic incl. --threads 4",
              pass, pass ? "all reruns identical" : detail);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  Harness h;

  solver_correctness(h);
  optimality_conditions(h);
  cycle_equivalence(h);
  k3_probabilities(h);
  table_reproduction(h);
  vertex_sum_theorem(h);
  butterfly_distribution(h);
  diamond_theorems(h);
  rounding_guarantee(h);
  if (cli.empty()) {
    h.criterion(10, "seeded commands are byte-deterministic incl. --threads 4",
                false, "CLI path not provided");
  } else {
    determinism(h, cli);
  }

  std::printf("%d/10 criteria passed\n", 10 - h.failures);
  return h.failures == 0 ? 0 : 1;
}
