#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cutrank/graph.hpp"
#include "cutrank/rng.hpp"

namespace cutrank {

enum class WeightMode { Arbitrary, Positive };

std::string to_string(WeightMode m);
WeightMode weight_mode_from_string(const std::string& s);

struct SampleConfig {
  std::string graph_name = "k3";
  long samples = 1000;
  WeightMode mode = WeightMode::Arbitrary;
  std::uint64_t seed = 0;
  double rank_tol = 1e-6;
  // Tighter than the solver's general default: rank statistics need the
  // zero eigenvalues pushed well below the rank threshold, otherwise the
  // ambiguity exclusion biases the counts.
  double solver_tol = 1e-10;
  int max_iter = 300;
  int threads = 1;
};

// Empirical distribution of the solver's primal rank. Samples that do not
// converge or whose rank call is tolerance-ambiguous are excluded and
// counted; fractions normalize over the counted samples.
struct RankDistribution {
  std::map<int, long> counts;
  std::map<int, double> fractions;
  long excluded = 0;
  long samples = 0;
};

// i.i.d. standard Gaussians normalized to unit length, i.e. uniform on the
// unit sphere; Positive mode takes absolute values first (first orthant).
Eigen::VectorXd sample_weights(int edge_count, WeightMode mode,
                               CounterRng& rng);

// Per-sample RNG streams are CounterRng(cfg.seed, sample_index), so results
// are identical for any thread count. Weight vectors are drawn in the named
// graph's documented edge order.
RankDistribution rank_distribution(const SampleConfig& cfg);

// Closed forms for the probability that a random triangle admits a rank-1
// solution: (6-2*sqrt(3))/3 for sign-free weights, (9-4*sqrt(3))/3 for
// positive weights.
double k3_analytic_probability(WeightMode mode);

// Monte-Carlo estimate of the cycle rank-1 probability using the
// combinatorial criterion only (no solves).
double cycle_condition_probability(int n, WeightMode mode, long samples,
                                   std::uint64_t seed);

// Fraction of counted samples with rank X + rank S = n.
double strict_complementarity_rate(const SampleConfig& cfg);

// Numerical probe of the edge-sum dual composition: whenever both subgraph
// solutions are rank 1 and agree on the shared edge, test whether a padded
// sum of the subgraph duals with a +/- shared-weight correction (the two
// regime forms: diagonal +c/4 or -c/4, off-diagonal -c/4) is dual feasible
// and complementary with the solved edge-sum primal. Reports counts and
// counterexample weight vectors; no claim beyond the samples.
struct ConjectureProbeReport {
  long samples = 0;
  long skipped = 0;  // subgraph solution not rank 1, disagreement, or solver failure
  long matched_aligned_form = 0;
  long matched_flipped_form = 0;
  long disagreements = 0;
  std::vector<Eigen::VectorXd> counterexamples;  // at most 10 kept
  std::uint64_t seed = 0;
};

// g1 and g2 are glued along g1's last two vertices and g2's first two
// (their shared-edge weights must match for the gluing to be valid).
// Weights are resampled per trial on the glued graph's edges.
ConjectureProbeReport probe_edge_sum_conjecture(
    const WeightedGraph& g1, const WeightedGraph& g2, long samples,
    std::uint64_t seed, WeightMode mode = WeightMode::Arbitrary);

}  // namespace cutrank
