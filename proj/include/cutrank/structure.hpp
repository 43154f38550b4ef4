#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "cutrank/graph.hpp"
#include "cutrank/maxcut.hpp"

namespace cutrank {

enum class CycleRank1Reason { EvenPositives, DominantWeight, None };

std::string to_string(CycleRank1Reason r);

// Outcome of the rank-1 test for a weighted cycle. weights[i] is the weight
// of edge (i, i+1 mod n). A rank-1 optimal solution exists iff the number of
// positive weights is even, or some single weight dominates:
// 1/|w_m| >= sum_{i != m} 1/|w_i| (equality counts). dominant_margin is that
// difference for the minimum-|w| edge, reported so callers can see boundary
// proximity. When a rank-1 solution exists the unique optimal cut is
// constructed: every edge product w_i x_i x_{i+1} negative, except positive
// at the dominant edge when the positive count is odd. Sign fixed by
// x_0 = +1.
struct CycleAnalysis {
  bool has_rank1 = false;
  CycleRank1Reason reason = CycleRank1Reason::None;
  int dominant_index = -1;  // argmin |w_i| (first on ties)
  double dominant_margin = 0.0;
  std::optional<CutVector> optimal_cut;
};

// Throws on n < 3 or any zero weight (the criterion divides by |w|).
CycleAnalysis cycle_rank1_analysis(const std::vector<double>& weights);

// Determinant of the lower-right m x m principal submatrix of -L(C_n, w),
// computed by the elementary-symmetric-sum recurrence
//   d_m = -w[n-m-1] d_{m-1} + (-1)^m w[n-m] ... w[n-1],  d_0 = 1,
// for 1 <= m < n. Exposed so tests can pin the recurrence against a dense
// determinant.
double cycle_symmetric_minor_determinant(const std::vector<double>& weights,
                                         int m);

// Optimal pair for the vertex sum of two solved graphs glued at the last
// vertex of the first and the first vertex of the second:
//   X' = [ Y1      y1   y1 y2^T ]      S' = [S1 0] + [0  0]
//        [ y1^T    1    y2^T    ]           [0  0]   [0 S2]
//        [ y2 y1^T y2   Y2      ]
// with rank X' = rank X1 + rank X2 - 1.
struct VertexSumComposition {
  Eigen::MatrixXd X_composed;
  Eigen::MatrixXd S_composed;
  int rank_formula_value = 0;  // rank X1 + rank X2 - 1
};

// Inputs must be (near-)optimal pairs: unit diagonals, psd, X S ~ 0; checked
// structurally at a fixed 1e-6 tolerance (full optimality also needs the
// graphs' cost matrices, which the caller verifies via check_optimality).
VertexSumComposition compose_vertex_sum(const Eigen::MatrixXd& X1,
                                        const Eigen::MatrixXd& S1,
                                        const Eigen::MatrixXd& X2,
                                        const Eigen::MatrixXd& S2,
                                        double rank_tol = 1e-6);

// A vertex sum also admits an optimal solution of rank
// max(rank X1, rank X2): the two Gram factorizations can be embedded in a
// common space and rotated to agree on the glued unit vector, which fills
// the free off-diagonal block without raising the rank. Verifies that
// completion for the given pair (unit diagonal, psd, rank, matching
// diagonal blocks) and returns max(rank X1, rank X2); throws if the
// verification fails.
int vertex_sum_min_rank_exists(const Eigen::MatrixXd& X1,
                               const Eigen::MatrixXd& X2,
                               double rank_tol = 1e-6);

enum class DiamondRegime { Aligned, Flipped, Neither };

std::string to_string(DiamondRegime r);

// Classification of the canonical diamond (vertices 0..3, edges
// (0,1),(0,2),(1,2),(1,3),(2,3), shared edge (1,2), weights
// (a,b,c,d,e) in that edge order):
//   Aligned: c <= min(1/(1/a+1/b), 1/(1/d+1/e));  cut (-1,1,1,-1),
//            shared edge uncut.
//   Flipped: c >= 1/|1/a-1/b| + 1/|1/d-1/e|;       cut (e1,-1,1,e2),
//            shared edge cut (thresholds with vanishing denominators are
//            treated as +inf, making Flipped unsatisfiable).
// When a regime fires, both triangle subgraphs must have rank-1 solutions
// agreeing on the shared edge (throws otherwise), and x_star must carry a
// valid rank-1 certificate; the inequalities are positive-weight statements,
// so a fired condition whose certificate fails (possible with signed
// weights) is classified Neither. S_star is assembled from the triangle
// duals plus the shared-edge correction (diagonal x1*x2*c/4, off-diagonal
// -c/4) and satisfies S_star x_star = 0 and dual feasibility.
struct DiamondAnalysis {
  DiamondRegime regime = DiamondRegime::Neither;
  std::optional<CutVector> x_star;
  std::optional<Eigen::MatrixXd> S_star;
  double condition_lhs = 0.0;  // shared weight c
  double condition_rhs = 0.0;  // active regime's threshold (aligned's if Neither)
  double aligned_threshold = 0.0;
  double flipped_threshold = 0.0;
};

DiamondAnalysis diamond_analysis(const WeightedGraph& g);

// Determinant of the upper 3x3 principal submatrix of the signed Laplacian
// L(G, wbar), wbar_ij = -x_i x_j w_ij, evaluated through its factored
// polynomial in the signed weights rather than by elimination; tests pin it
// against a dense determinant.
double diamond_flipped_minor_determinant(const WeightedGraph& g,
                                         const CutVector& x);

}  // namespace cutrank
