#include "cutrank/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cutrank/sdp.hpp"

namespace cutrank {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInputTol = 1e-6;

void check_solution_pair(const MatrixXd& X, const MatrixXd& S,
                         const char* which) {
  const auto n = X.rows();
  if (n < 1 || X.cols() != n || S.rows() != n || S.cols() != n)
    throw std::invalid_argument(std::string("compose_vertex_sum: bad "
                                            "dimensions for pair ") +
                                which);
  if ((X.diagonal().array() - 1.0).abs().maxCoeff() > kInputTol)
    throw std::invalid_argument(std::string("compose_vertex_sum: X") + which +
                                " diagonal is not all ones");
  const double sx = std::max(1.0, X.cwiseAbs().maxCoeff());
  const double ss = std::max(1.0, S.cwiseAbs().maxCoeff());
  if (symmetric_eigenvalues(X)(0) < -kInputTol * sx)
    throw std::invalid_argument(std::string("compose_vertex_sum: X") + which +
                                " is not psd");
  if (symmetric_eigenvalues(S)(0) < -kInputTol * ss)
    throw std::invalid_argument(std::string("compose_vertex_sum: S") + which +
                                " is not psd");
  // sanity gate, not a precision claim: solver outputs carry a
  // complementarity residual around the square root of their gap tolerance
  if ((X * S).cwiseAbs().maxCoeff() > 1e-4 * sx * ss)
    throw std::invalid_argument(std::string("compose_vertex_sum: pair ") +
                                which + " violates complementarity");
}

// Rows span the range of X: X = V^T V with rank(X) rows, eigenvalues below
// the rank threshold dropped.
MatrixXd gram_factor(const MatrixXd& X, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (X + X.transpose()));
  const VectorXd& ev = es.eigenvalues();
  const double threshold = rank_tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<int> keep;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > threshold) keep.push_back(i);
  MatrixXd V(static_cast<int>(keep.size()), X.rows());
  for (std::size_t r = 0; r < keep.size(); ++r)
    V.row(static_cast<int>(r)) =
        std::sqrt(ev(keep[r])) * es.eigenvectors().col(keep[r]).transpose();
  return V;
}

WeightedGraph canonical_diamond_weights(double a, double b, double c, double d,
                                        double e) {
  return WeightedGraph(
      4, {{0, 1, a}, {0, 2, b}, {1, 2, c}, {1, 3, d}, {2, 3, e}});
}

}  // namespace

std::string to_string(CycleRank1Reason r) {
  switch (r) {
    case CycleRank1Reason::EvenPositives: return "even-positives";
    case CycleRank1Reason::DominantWeight: return "dominant-weight";
    case CycleRank1Reason::None: return "none";
  }
  return "unknown";
}

std::string to_string(DiamondRegime r) {
  switch (r) {
    case DiamondRegime::Aligned: return "aligned";
    case DiamondRegime::Flipped: return "flipped";
    case DiamondRegime::Neither: return "neither";
  }
  return "unknown";
}

CycleAnalysis cycle_rank1_analysis(const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  if (n < 3)
    throw std::invalid_argument("cycle_rank1_analysis: need n >= 3 edges");
  for (double w : weights) {
    if (!std::isfinite(w))
      throw std::invalid_argument("cycle_rank1_analysis: non-finite weight");
    if (w == 0.0)
      throw std::invalid_argument(
          "cycle_rank1_analysis: zero weight (criterion divides by |w|)");
  }

  CycleAnalysis a;
  int m = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(weights[i]) < std::abs(weights[m])) m = i;
  a.dominant_index = m;
  double inv_sum = 0.0;
  for (int i = 0; i < n; ++i)
    if (i != m) inv_sum += 1.0 / std::abs(weights[i]);
  a.dominant_margin = 1.0 / std::abs(weights[m]) - inv_sum;

  const int positives =
      static_cast<int>(std::count_if(weights.begin(), weights.end(),
                                     [](double w) { return w > 0.0; }));
  const bool even = positives % 2 == 0;
  const bool dominant = a.dominant_margin >= 0.0;

  if (even) {
    a.has_rank1 = true;
    a.reason = CycleRank1Reason::EvenPositives;
  } else if (dominant) {
    a.has_rank1 = true;
    a.reason = CycleRank1Reason::DominantWeight;
  } else {
    a.has_rank1 = false;
    a.reason = CycleRank1Reason::None;
    return a;
  }

  // Walk the cycle making every edge product negative; with an odd number
  // of positive weights the dominant edge takes the positive product
  // instead, which restores parity around the cycle.
  const int flip_at = even ? -1 : m;
  CutVector x(n);
  x(0) = 1.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double want = (i == flip_at) ? +1.0 : -1.0;
    x(i + 1) = x(i) * want * (weights[i] > 0.0 ? 1.0 : -1.0);
  }
  a.optimal_cut = x;
  return a;
}

double cycle_symmetric_minor_determinant(const std::vector<double>& weights,
                                         int m) {
  const int n = static_cast<int>(weights.size());
  if (n < 3)
    throw std::invalid_argument("cycle minor: need n >= 3 edges");
  if (m < 1 || m >= n)
    throw std::out_of_range("cycle minor: need 1 <= m < n");
  double d = 1.0;            // d_0
  double tail_product = 1.0;  // w[n-k] ... w[n-1]
  double parity = -1.0;       // (-1)^k
  for (int k = 1; k <= m; ++k) {
    tail_product *= weights[n - k];
    d = -weights[n - k - 1] * d + parity * tail_product;
    parity = -parity;
  }
  return d;
}

VertexSumComposition compose_vertex_sum(const Eigen::MatrixXd& X1,
                                        const Eigen::MatrixXd& S1,
                                        const Eigen::MatrixXd& X2,
                                        const Eigen::MatrixXd& S2,
                                        double rank_tol) {
  check_solution_pair(X1, S1, "1");
  check_solution_pair(X2, S2, "2");
  const int n1 = static_cast<int>(X1.rows());
  const int n2 = static_cast<int>(X2.rows());
  const int n = n1 + n2 - 1;

  const VectorXd y1 = X1.col(n1 - 1).head(n1 - 1);
  const VectorXd y2 = X2.col(0).tail(n2 - 1);

  VertexSumComposition out;
  out.X_composed = MatrixXd::Zero(n, n);
  out.X_composed.topLeftCorner(n1, n1) = X1;
  out.X_composed.bottomRightCorner(n2, n2) = X2;
  out.X_composed.topRightCorner(n1 - 1, n2 - 1) = y1 * y2.transpose();
  out.X_composed.bottomLeftCorner(n2 - 1, n1 - 1) = y2 * y1.transpose();

  out.S_composed = MatrixXd::Zero(n, n);
  out.S_composed.topLeftCorner(n1, n1) = S1;
  out.S_composed.bottomRightCorner(n2, n2) += S2;

  out.rank_formula_value =
      numerical_rank(X1, rank_tol) + numerical_rank(X2, rank_tol) - 1;
  return out;
}

int vertex_sum_min_rank_exists(const Eigen::MatrixXd& X1,
                               const Eigen::MatrixXd& X2, double rank_tol) {
  const int n1 = static_cast<int>(X1.rows());
  const int n2 = static_cast<int>(X2.rows());
  const int r1 = numerical_rank(X1, rank_tol);
  const int r2 = numerical_rank(X2, rank_tol);
  const int r = std::max(r1, r2);

  // Embed both factors in R^r and rotate the second so the glued columns
  // coincide; [V1 | Q V2'] then completes the corner block at rank <= r.
  MatrixXd V1 = MatrixXd::Zero(r, n1);
  V1.topRows(numerical_rank(X1, rank_tol)) = gram_factor(X1, rank_tol);
  MatrixXd V2 = MatrixXd::Zero(r, n2);
  V2.topRows(numerical_rank(X2, rank_tol)) = gram_factor(X2, rank_tol);

  VectorXd v = V1.col(n1 - 1);
  VectorXd u = V2.col(0);
  const VectorXd c = u - v;
  MatrixXd Q = MatrixXd::Identity(r, r);
  if (c.squaredNorm() > 1e-24)
    Q -= (2.0 / c.squaredNorm()) * (c * c.transpose());  // reflects u to v

  MatrixXd W(r, n1 + n2 - 1);
  W.leftCols(n1) = V1;
  W.rightCols(n2 - 1) = Q * V2.rightCols(n2 - 1);
  const MatrixXd Xc = W.transpose() * W;

  const double tol = std::sqrt(rank_tol);
  if ((Xc.diagonal().array() - 1.0).abs().maxCoeff() > tol)
    throw std::runtime_error(
        "vertex_sum_min_rank_exists: completion lost the unit diagonal");
  if ((Xc.topLeftCorner(n1, n1) - X1).cwiseAbs().maxCoeff() > tol ||
      (Xc.bottomRightCorner(n2, n2) - X2).cwiseAbs().maxCoeff() > tol)
    throw std::runtime_error(
        "vertex_sum_min_rank_exists: completion moved a diagonal block");
  if (numerical_rank(Xc, rank_tol) > r)
    throw std::runtime_error(
        "vertex_sum_min_rank_exists: completion exceeded the promised rank");
  return r;
}

DiamondAnalysis diamond_analysis(const WeightedGraph& g) {
  if (g.vertex_count() != 4 || g.edge_count() != 5 || !g.has_edge(0, 1) ||
      !g.has_edge(0, 2) || !g.has_edge(1, 2) || !g.has_edge(1, 3) ||
      !g.has_edge(2, 3))
    throw std::invalid_argument(
        "diamond_analysis: expected the canonical diamond (edges "
        "(0,1),(0,2),(1,2),(1,3),(2,3))");

  const double a = g.weight(0, 1);
  const double b = g.weight(0, 2);
  const double c = g.weight(1, 2);
  const double d = g.weight(1, 3);
  const double e = g.weight(2, 3);

  DiamondAnalysis out;
  out.condition_lhs = c;

  const double inf = std::numeric_limits<double>::infinity();
  auto series = [&](double p, double q) {
    const double s = 1.0 / p + 1.0 / q;
    return s == 0.0 ? inf : 1.0 / s;
  };
  auto flip_term = [&](double p, double q) {
    const double dd = std::abs(1.0 / p - 1.0 / q);
    return dd == 0.0 ? inf : 1.0 / dd;
  };
  out.aligned_threshold = std::min(series(a, b), series(d, e));
  out.flipped_threshold = flip_term(a, b) + flip_term(d, e);
  out.condition_rhs = out.aligned_threshold;

  DiamondRegime candidate = DiamondRegime::Neither;
  if (c <= out.aligned_threshold)
    candidate = DiamondRegime::Aligned;
  else if (c >= out.flipped_threshold)
    candidate = DiamondRegime::Flipped;
  if (candidate == DiamondRegime::Neither) return out;

  // The regimes only make sense when both triangles have rank-1 solutions
  // that treat the shared edge the same way.
  const CycleAnalysis t1 = cycle_rank1_analysis({a, c, b});
  const CycleAnalysis t2 = cycle_rank1_analysis({c, e, d});
  if (!t1.has_rank1 || !t2.has_rank1)
    throw std::invalid_argument(
        "diamond_analysis: a triangle subgraph has no rank-1 solution");
  const double shared1 = (*t1.optimal_cut)(1) * (*t1.optimal_cut)(2);
  const double shared2 = (*t2.optimal_cut)(0) * (*t2.optimal_cut)(1);
  if (shared1 != shared2)
    throw std::invalid_argument(
        "diamond_analysis: triangle solutions disagree on the shared edge");

  CutVector x(4);
  if (candidate == DiamondRegime::Aligned) {
    x << -1.0, 1.0, 1.0, -1.0;
  } else {
    const double target = brute_force_maxcut(g).value;
    bool found = false;
    for (double e1 : {1.0, -1.0}) {
      for (double e2 : {1.0, -1.0}) {
        CutVector cand(4);
        cand << e1, -1.0, 1.0, e2;
        if (cut_value(g, cand) >=
            target - 1e-12 * std::max(1.0, std::abs(target))) {
          x = cand;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) {
      // none of the four candidates is a maximizer: outside the regime
      return out;
    }
  }

  // Signed weights can satisfy the inequality without optimality; only a
  // certified cut is classified.
  if (!rank1_certificate(g, x, 1e-8)) return out;

  out.regime = candidate;
  out.condition_rhs = candidate == DiamondRegime::Aligned
                          ? out.aligned_threshold
                          : out.flipped_threshold;
  out.x_star = x;

  const WeightedGraph tri1(3, {{0, 1, a}, {0, 2, b}, {1, 2, c}});
  const WeightedGraph tri2(3, {{0, 1, c}, {0, 2, d}, {1, 2, e}});
  CutVector x1 = x.head(3);
  CutVector x2 = x.tail(3);
  const MatrixXd S1 = dual_for_cut(tri1, x1);
  const MatrixXd S2 = dual_for_cut(tri2, x2);

  MatrixXd S = MatrixXd::Zero(4, 4);
  S.topLeftCorner(3, 3) = S1;
  S.bottomRightCorner(3, 3) += S2;
  // Shared-edge correction: the off-diagonal entry was counted twice and
  // each shared diagonal entry carries the edge once too many.
  const double shared = x(1) * x(2);
  S(1, 2) -= 0.25 * c;
  S(2, 1) -= 0.25 * c;
  S(1, 1) += shared * 0.25 * c;
  S(2, 2) += shared * 0.25 * c;
  out.S_star = S;
  return out;
}

double diamond_flipped_minor_determinant(const WeightedGraph& g,
                                         const CutVector& x) {
  if (g.vertex_count() != 4 || g.edge_count() != 5 || !g.has_edge(1, 2))
    throw std::invalid_argument(
        "diamond_flipped_minor_determinant: expected the canonical diamond");
  const double wa = -x(0) * x(1) * g.weight(0, 1);
  const double wb = -x(0) * x(2) * g.weight(0, 2);
  const double wc = -x(1) * x(2) * g.weight(1, 2);
  const double wd = -x(1) * x(3) * g.weight(1, 3);
  const double we = -x(2) * x(3) * g.weight(2, 3);
  // Cofactor expansion of the 3x3 minor collapses to this factored form.
  return wc * (wa + wb) * (wd + we) + (wa + wb) * wd * we +
         (wd + we) * wa * wb;
}

}  // namespace cutrank
