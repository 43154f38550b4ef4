#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "cutrank/graph.hpp"
#include "cutrank/sdp.hpp"

namespace cutrank {

// A cut is a +/-1 vector over the vertices.
using CutVector = Eigen::VectorXd;

struct CutResult {
  CutVector cut;
  double value = 0.0;  // total weight across the cut
};

SdpProblem max_cut_sdp(const WeightedGraph& g);

// Sum of w_ij over edges with x_i != x_j; equals (1/4) x^T L x.
double cut_value(const WeightedGraph& g, const CutVector& x);

// Exact optimum by enumerating the 2^(n-1) sign vectors with x_0 = +1
// (Gray-code order, one vertex flipped per step). Ties resolve to the
// lexicographically smallest vector. Guarded at n <= 26.
CutResult brute_force_maxcut(const WeightedGraph& g);

// Objective value C.X of a solution for this graph's relaxation.
double sdp_value(const WeightedGraph& g, const SdpSolution& sol);

// If X has numerical rank 1 and its scaled leading eigenvector has all
// entries within tol of +/-1, returns the sign vector (first entry positive).
std::optional<CutVector> recover_cut_if_rank1(const SdpSolution& sol,
                                              double tol = 1e-6);

// Hyperplane rounding: factor X = V^T V (negative eigenvalues below the
// tolerance are zeroed), draw Gaussian vectors from per-trial streams of
// CounterRng(seed, trial), keep the best cut. sign(0) := +1. Throws if X is
// more indefinite than -sqrt(tol).
CutResult gw_round(const WeightedGraph& g, const SdpSolution& sol, int trials,
                   std::uint64_t seed, double tol = 1e-8);

// Laplacian of the sign-flipped weights wbar_ij = -x_i x_j w_ij.
Eigen::MatrixXd signed_laplacian(const WeightedGraph& g, const CutVector& x);

// The unique dual-feasible S with S x = 0 for the cut x:
// S = (1/4) Diag(x) L(G,wbar) Diag(x). It is psd exactly when the signed
// Laplacian is, in which case (x x^T, S) is an optimal primal-dual pair.
Eigen::MatrixXd dual_for_cut(const WeightedGraph& g, const CutVector& x);

// True iff lambda_min(L(G,wbar)) >= -tol, certifying x x^T optimal.
bool rank1_certificate(const WeightedGraph& g, const CutVector& x,
                       double tol = 1e-8);

}  // namespace cutrank
