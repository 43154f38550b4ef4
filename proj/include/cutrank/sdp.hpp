#pragma once

#include <Eigen/Dense>
#include <string>

namespace cutrank {

// max C.X subject to X_ii = 1 and X psd. The unit-diagonal constraints are
// implicit; only the cost matrix is stored.
struct SdpProblem {
  Eigen::MatrixXd C;
  int size() const { return static_cast<int>(C.rows()); }
};

enum class SolveStatus { Converged, MaxIterations, NumericalFailure };

std::string to_string(SolveStatus s);

struct SdpSolution {
  Eigen::MatrixXd X;      // primal
  Eigen::VectorXd y;      // dual multipliers of the diagonal constraints
  Eigen::MatrixXd S;      // dual slack, S = Diag(y) - C exactly on return
  double primal_value = 0.0;  // C.X
  double dual_value = 0.0;    // sum(y)
  double gap = 0.0;           // dual_value - primal_value
  int iterations = 0;
  SolveStatus status = SolveStatus::NumericalFailure;
};

struct SolveOptions {
  double tol = 1e-8;   // relative duality-gap and feasibility target
  int max_iter = 200;
};

// Primal-dual path-following solver. Strictly feasible start (X = I,
// y_i = 1 + sum_j |C_ij| so S is diagonally dominant), HKM search direction
// with Mehrotra predictor-corrector. The unit-diagonal constraints make the
// Schur complement the Hadamard product X o inv(S), solved by Cholesky.
// Following the central path, the iterates converge to the maximum-rank
// (analytic-center) optimal solution.
SdpSolution solve(const SdpProblem& p, const SolveOptions& opts = {});

// Residuals of the three optimality conditions: primal feasibility,
// dual feasibility (y is recovered as y_i = S_ii + C_ii), and
// complementarity max|XS|. optimal() is true iff all are within tol.
struct OptimalityCheck {
  double primal_diag_residual = 0.0;   // max |X_ii - 1|
  double primal_psd_residual = 0.0;    // max(0, -lambda_min(X))
  double dual_structure_residual = 0.0;  // max off-diag |S - (Diag(y)-C)|
  double dual_psd_residual = 0.0;      // max(0, -lambda_min(S))
  double complementarity_residual = 0.0;  // max |(XS)_ij|
  double tol = 0.0;
  bool optimal() const {
    return primal_diag_residual <= tol && primal_psd_residual <= tol &&
           dual_structure_residual <= tol && dual_psd_residual <= tol &&
           complementarity_residual <= tol;
  }
  explicit operator bool() const { return optimal(); }
};

OptimalityCheck check_optimality(const SdpProblem& p, const Eigen::MatrixXd& X,
                                 const Eigen::MatrixXd& S, double tol);

// Eigenvalues of a symmetric matrix, ascending.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& M);

// Number of eigenvalues with |lambda| > tol * max(1, max|lambda|).
int numerical_rank(const Eigen::MatrixXd& M, double tol);

// Largest r with r(r+1)/2 <= n: some optimal primal solution always has
// rank at most this.
int pataki_rank_bound(int n);

struct RankReport {
  int rank_X = 0;
  int rank_S = 0;
  Eigen::VectorXd eigenvalues_X;  // ascending
  Eigen::VectorXd eigenvalues_S;  // ascending
  bool strictly_complementary = false;  // rank_X + rank_S == n
  double tolerance_used = 0.0;
  bool exceeds_pataki_bound = false;  // a lower-rank optimal X must exist
};

RankReport rank_report(const SdpSolution& sol, double tol = 1e-6);

// True when some |eigenvalue| falls within a decade of the rank threshold,
// i.e. the rank call is sensitive to the tolerance.
bool rank_is_ambiguous(const Eigen::VectorXd& eigenvalues, double tol);

}  // namespace cutrank
