#include "cutrank/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cutrank/maxcut.hpp"
#include "cutrank/sdp.hpp"
#include "cutrank/structure.hpp"

namespace cutrank {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr long kExcluded = -1;

// Rank of the solved primal, or kExcluded when the solve fails or the rank
// call sits within a decade of the threshold.
int sampled_rank(const WeightedGraph& topology, const SampleConfig& cfg,
                 std::uint64_t sample_index, int* rank_s_out = nullptr) try {
  CounterRng rng(cfg.seed, sample_index);
  const VectorXd w = sample_weights(topology.edge_count(), cfg.mode, rng);
  const WeightedGraph g = topology.with_weights(w);
  const SdpSolution sol =
      solve(max_cut_sdp(g), {cfg.solver_tol, cfg.max_iter});
  if (sol.status != SolveStatus::Converged) return kExcluded;
  const RankReport rep = rank_report(sol, cfg.rank_tol);
  if (rank_is_ambiguous(rep.eigenvalues_X, cfg.rank_tol)) return kExcluded;
  if (rank_s_out) {
    if (rank_is_ambiguous(rep.eigenvalues_S, cfg.rank_tol)) return kExcluded;
    *rank_s_out = rep.rank_S;
  }
  return rep.rank_X;
} catch (const std::exception&) {
  // a throwing sample must not tear down worker threads
  return kExcluded;
}

// Fills results[i] for i in [0, samples); parallel chunks write disjoint
// ranges so the outcome is independent of the thread count.
void run_samples(const WeightedGraph& topology, const SampleConfig& cfg,
                 bool need_rank_s, std::vector<int>& rank_x,
                 std::vector<int>& rank_s) {
  rank_x.assign(static_cast<std::size_t>(cfg.samples), kExcluded);
  if (need_rank_s) rank_s.assign(static_cast<std::size_t>(cfg.samples), 0);

  auto worker = [&](long begin, long end) {
    for (long i = begin; i < end; ++i) {
      int rs = 0;
      const int rx = sampled_rank(topology, cfg,
                                  static_cast<std::uint64_t>(i),
                                  need_rank_s ? &rs : nullptr);
      rank_x[static_cast<std::size_t>(i)] = rx;
      if (need_rank_s) rank_s[static_cast<std::size_t>(i)] = rs;
    }
  };

  const int threads = static_cast<int>(
      std::max<long>(1, std::min<long>(cfg.threads, cfg.samples)));
  if (threads == 1) {
    worker(0, cfg.samples);
    return;
  }
  std::vector<std::thread> pool;
  const long chunk = (cfg.samples + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long begin = t * chunk;
    const long end = std::min<long>(cfg.samples, begin + chunk);
    if (begin < end) pool.emplace_back(worker, begin, end);
  }
  for (auto& th : pool) th.join();
}

WeightedGraph topology_for(const SampleConfig& cfg) {
  WeightedGraph g = named_graph(cfg.graph_name);
  if (g.edge_count() < 1)
    throw std::invalid_argument("sampling needs a graph with edges");
  if (cfg.samples < 1)
    throw std::invalid_argument("samples must be >= 1");
  return g;
}

}  // namespace

std::string to_string(WeightMode m) {
  return m == WeightMode::Arbitrary ? "arbitrary" : "positive";
}

WeightMode weight_mode_from_string(const std::string& s) {
  if (s == "arbitrary") return WeightMode::Arbitrary;
  if (s == "positive") return WeightMode::Positive;
  throw std::invalid_argument("unknown weight mode '" + s +
                              "' (expected arbitrary|positive)");
}

Eigen::VectorXd sample_weights(int edge_count, WeightMode mode,
                               CounterRng& rng) {
  if (edge_count < 1)
    throw std::invalid_argument("sample_weights: need edge_count >= 1");
  VectorXd w(edge_count);
  for (int i = 0; i < edge_count; ++i) {
    // exact zeros (probability 2^-53 per draw) would break downstream
    // reciprocal criteria; redrawing conditions them away deterministically
    do {
      w(i) = rng.gaussian();
    } while (w(i) == 0.0);
  }
  if (mode == WeightMode::Positive) w = w.cwiseAbs();
  return w / w.norm();
}

RankDistribution rank_distribution(const SampleConfig& cfg) {
  const WeightedGraph topology = topology_for(cfg);
  std::vector<int> rank_x, rank_s;
  run_samples(topology, cfg, false, rank_x, rank_s);

  RankDistribution dist;
  dist.samples = cfg.samples;
  for (int r : rank_x) {
    if (r == kExcluded)
      ++dist.excluded;
    else
      ++dist.counts[r];
  }
  const long counted = cfg.samples - dist.excluded;
  for (const auto& [rank, count] : dist.counts)
    dist.fractions[rank] =
        counted > 0 ? static_cast<double>(count) / counted : 0.0;
  return dist;
}

double k3_analytic_probability(WeightMode mode) {
  const double s3 = std::sqrt(3.0);
  return mode == WeightMode::Arbitrary ? (6.0 - 2.0 * s3) / 3.0
                                       : (9.0 - 4.0 * s3) / 3.0;
}

double cycle_condition_probability(int n, WeightMode mode, long samples,
                                   std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("cycle probability: need n >= 3");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  long hits = 0;
  std::vector<double> w(static_cast<std::size_t>(n));
  for (long i = 0; i < samples; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const VectorXd v = sample_weights(n, mode, rng);
    for (int k = 0; k < n; ++k) w[static_cast<std::size_t>(k)] = v(k);
    if (cycle_rank1_analysis(w).has_rank1) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

double strict_complementarity_rate(const SampleConfig& cfg) {
  const WeightedGraph topology = topology_for(cfg);
  const int n = topology.vertex_count();
  std::vector<int> rank_x, rank_s;
  run_samples(topology, cfg, true, rank_x, rank_s);
  long counted = 0;
  long strict = 0;
  for (std::size_t i = 0; i < rank_x.size(); ++i) {
    if (rank_x[i] == kExcluded) continue;
    ++counted;
    if (rank_x[i] + rank_s[i] == n) ++strict;
  }
  if (counted == 0) return 0.0;
  return static_cast<double>(strict) / static_cast<double>(counted);
}

ConjectureProbeReport probe_edge_sum_conjecture(const WeightedGraph& g1,
                                                const WeightedGraph& g2,
                                                long samples,
                                                std::uint64_t seed,
                                                WeightMode mode) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const int n1 = g1.vertex_count();
  const int n2 = g2.vertex_count();
  if (n1 < 3 || n2 < 3)
    throw std::invalid_argument("probe: subgraphs need >= 3 vertices");

  const CliqueSumSpec spec{g1, g2, {n1 - 2, n1 - 1}, {0, 1}};
  const CliqueSumResult sum = edge_sum(spec);  // validates the shared edge
  const WeightedGraph& G = sum.graph;
  const int n = G.vertex_count();
  const int E = G.edge_count();
  const int E1 = g1.edge_count();

  // Result edges start with g1's (same order); the shared edge keeps its
  // g1 position, g2's remaining edges follow.
  int shared_index = -1;
  for (int k = 0; k < E1; ++k) {
    const auto& ed = G.edges()[static_cast<std::size_t>(k)];
    if (ed.i == n1 - 2 && ed.j == n1 - 1) shared_index = k;
  }
  if (shared_index < 0)
    throw std::logic_error("probe: shared edge not found after relabeling");

  // Subgraph topologies in result coordinates; G2 is shifted to 0-based
  // local labels with the shared pair at (0,1).
  std::vector<WeightedEdge> e1(G.edges().begin(), G.edges().begin() + E1);
  const WeightedGraph G1R(n1, e1);
  std::vector<WeightedEdge> e2;
  std::vector<int> g2_weight_source;  // result edge index per G2R edge
  e2.push_back({0, 1, 1.0});
  g2_weight_source.push_back(shared_index);
  for (int k = E1; k < E; ++k) {
    const auto& ed = G.edges()[static_cast<std::size_t>(k)];
    e2.push_back({ed.i - (n1 - 2), ed.j - (n1 - 2), 1.0});
    g2_weight_source.push_back(k);
  }
  const WeightedGraph G2R(n2, e2);

  ConjectureProbeReport rep;
  rep.samples = samples;
  rep.seed = seed;

  for (long t = 0; t < samples; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    const VectorXd w = sample_weights(E, mode, rng);
    const WeightedGraph Gw = G.with_weights(w);
    const WeightedGraph G1w = G1R.with_weights(w.head(E1));
    VectorXd w2(G2R.edge_count());
    for (int k = 0; k < G2R.edge_count(); ++k)
      w2(k) = w(g2_weight_source[static_cast<std::size_t>(k)]);
    const WeightedGraph G2w = G2R.with_weights(w2);

    const SdpSolution s1 = solve(max_cut_sdp(G1w));
    const SdpSolution s2 = solve(max_cut_sdp(G2w));
    if (s1.status != SolveStatus::Converged ||
        s2.status != SolveStatus::Converged) {
      ++rep.skipped;
      continue;
    }
    const auto x1 = recover_cut_if_rank1(s1);
    const auto x2 = recover_cut_if_rank1(s2);
    if (!x1 || !x2) {
      ++rep.skipped;
      continue;
    }
    const double shared1 = (*x1)(n1 - 2) * (*x1)(n1 - 1);
    const double shared2 = (*x2)(0) * (*x2)(1);
    if (shared1 != shared2) {
      ++rep.skipped;
      continue;
    }

    const SdpSolution sg = solve(max_cut_sdp(Gw));
    if (sg.status != SolveStatus::Converged) {
      ++rep.skipped;
      continue;
    }

    const MatrixXd S1 = dual_for_cut(G1w, *x1);
    const MatrixXd S2 = dual_for_cut(G2w, *x2);
    const double ws = w(shared_index);

    bool matched = false;
    for (double diag_sign : {+1.0, -1.0}) {
      MatrixXd S = MatrixXd::Zero(n, n);
      S.topLeftCorner(n1, n1) = S1;
      S.block(n1 - 2, n1 - 2, n2, n2) += S2;
      S(n1 - 2, n1 - 1) -= 0.25 * ws;
      S(n1 - 1, n1 - 2) -= 0.25 * ws;
      S(n1 - 2, n1 - 2) += diag_sign * 0.25 * ws;
      S(n1 - 1, n1 - 1) += diag_sign * 0.25 * ws;

      const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
      const bool psd = symmetric_eigenvalues(S)(0) >= -1e-8 * scale;
      const bool complementary =
          (sg.X * S).cwiseAbs().maxCoeff() <= 1e-6 * scale;
      if (psd && complementary) {
        matched = true;
        if (diag_sign > 0.0)
          ++rep.matched_aligned_form;
        else
          ++rep.matched_flipped_form;
        break;
      }
    }
    if (!matched) {
      ++rep.disagreements;
      if (rep.counterexamples.size() < 10) rep.counterexamples.push_back(w);
    }
  }
  return rep;
}

}  // namespace cutrank
