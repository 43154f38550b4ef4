#include "cutrank/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cutrank {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Largest step a in [0, cap] keeping P + a*dP positive definite, found by
// generalized eigenvalues: P = LL^T, a_max = -1 / lambda_min(L^-1 dP L^-T).
double max_psd_step(const Eigen::LLT<MatrixXd>& llt, const MatrixXd& dP,
                    double cap) {
  MatrixXd W = llt.matrixL().solve(dP);
  W = llt.matrixL().solve(W.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (W + W.transpose()),
                                             Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  if (lmin >= 0.0) return cap;
  return std::min(cap, -1.0 / lmin);
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

SdpSolution solve(const SdpProblem& p, const SolveOptions& opts) {
  const int n = p.size();
  if (n < 1) throw std::invalid_argument("solve: empty problem");
  if (p.C.rows() != p.C.cols())
    throw std::invalid_argument("solve: cost matrix not square");
  if (!p.C.allFinite())
    throw std::invalid_argument("solve: cost matrix has non-finite entries");
  if ((p.C - p.C.transpose()).cwiseAbs().maxCoeff() > 0.0)
    throw std::invalid_argument("solve: cost matrix not symmetric");
  if (opts.tol <= 0.0) throw std::invalid_argument("solve: tol must be > 0");

  const MatrixXd& C = p.C;
  const VectorXd ones = VectorXd::Ones(n);

  SdpSolution sol;
  sol.X = MatrixXd::Identity(n, n);
  sol.y = ones + C.cwiseAbs().rowwise().sum();
  sol.S = MatrixXd(sol.y.asDiagonal()) - C;
  sol.status = SolveStatus::MaxIterations;

  const double fraction_to_boundary = 0.98;

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    sol.iterations = iter;
    sol.primal_value = (C.cwiseProduct(sol.X)).sum();
    sol.dual_value = sol.y.sum();
    sol.gap = sol.dual_value - sol.primal_value;

    const double comp = (sol.X.cwiseProduct(sol.S)).sum();  // X.S = gap
    if (comp <= opts.tol * std::max(1.0, std::abs(sol.primal_value))) {
      sol.status = SolveStatus::Converged;
      break;
    }

    Eigen::LLT<MatrixXd> sllt(sol.S);
    Eigen::LLT<MatrixXd> xllt(sol.X);
    if (sllt.info() != Eigen::Success || xllt.info() != Eigen::Success) {
      sol.status = SolveStatus::NumericalFailure;
      break;
    }
    const MatrixXd Sinv = sllt.solve(MatrixXd::Identity(n, n));
    const double mu = comp / n;

    // Schur complement of the Newton system; psd by the Schur product
    // theorem, so Cholesky applies.
    Eigen::LLT<MatrixXd> mllt(sol.X.cwiseProduct(Sinv));
    if (mllt.info() != Eigen::Success) {
      sol.status = SolveStatus::NumericalFailure;
      break;
    }

    // Predictor: pure Newton step toward XS = 0.
    const VectorXd dy_aff = mllt.solve(-ones);
    MatrixXd dX_aff =
        -sol.X - sol.X * dy_aff.asDiagonal() * Sinv;
    dX_aff = 0.5 * (dX_aff + dX_aff.transpose()).eval();

    const double ap_aff = max_psd_step(xllt, dX_aff, 1.0);
    MatrixXd dS_aff = MatrixXd(dy_aff.asDiagonal());
    const double ad_aff = max_psd_step(sllt, dS_aff, 1.0);
    const double mu_aff =
        ((sol.X + ap_aff * dX_aff).cwiseProduct(sol.S + ad_aff * dS_aff))
            .sum() /
        n;
    double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);
    sigma = std::clamp(sigma, 1e-6, 1.0);

    // Corrector with Mehrotra's second-order term dX_aff * dS_aff.
    const MatrixXd cross = dX_aff * dy_aff.asDiagonal();
    const VectorXd rhs = sigma * mu * Sinv.diagonal() - ones -
                         (cross * Sinv).diagonal();
    const VectorXd dy = mllt.solve(rhs);
    MatrixXd dX = sigma * mu * Sinv - sol.X -
                  (sol.X * dy.asDiagonal() + cross) * Sinv;
    dX = 0.5 * (dX + dX.transpose()).eval();
    const MatrixXd dS = MatrixXd(dy.asDiagonal());

    double ap = fraction_to_boundary * max_psd_step(xllt, dX, 1.0 / fraction_to_boundary);
    double ad = fraction_to_boundary * max_psd_step(sllt, dS, 1.0 / fraction_to_boundary);
    ap = std::min(ap, 1.0);
    ad = std::min(ad, 1.0);

    // Back off if roundoff pushed an iterate out of the cone.
    for (int tries = 0; tries < 40; ++tries) {
      MatrixXd Xn = sol.X + ap * dX;
      if (Eigen::LLT<MatrixXd>(Xn).info() == Eigen::Success) break;
      ap *= 0.8;
    }
    for (int tries = 0; tries < 40; ++tries) {
      MatrixXd Sn = sol.S + ad * dS;
      if (Eigen::LLT<MatrixXd>(Sn).info() == Eigen::Success) break;
      ad *= 0.8;
    }

    sol.X += ap * dX;
    sol.y += ad * dy;
    sol.X = 0.5 * (sol.X + sol.X.transpose()).eval();
    sol.X.diagonal().setOnes();     // the constraint, pinned exactly
    sol.S = MatrixXd(sol.y.asDiagonal()) - C;  // dual structure, exact

    if (!sol.X.allFinite() || !sol.y.allFinite()) {
      sol.status = SolveStatus::NumericalFailure;
      break;
    }
  }

  if (sol.status != SolveStatus::NumericalFailure &&
      sol.status != SolveStatus::Converged) {
    sol.status = SolveStatus::MaxIterations;
    sol.iterations = opts.max_iter;
  }
  sol.S = MatrixXd(sol.y.asDiagonal()) - C;
  sol.primal_value = (C.cwiseProduct(sol.X)).sum();
  sol.dual_value = sol.y.sum();
  sol.gap = sol.dual_value - sol.primal_value;
  return sol;
}

OptimalityCheck check_optimality(const SdpProblem& p, const Eigen::MatrixXd& X,
                                 const Eigen::MatrixXd& S, double tol) {
  const int n = p.size();
  if (X.rows() != n || X.cols() != n || S.rows() != n || S.cols() != n)
    throw std::invalid_argument("check_optimality: dimension mismatch");

  OptimalityCheck r;
  r.tol = tol;
  r.primal_diag_residual =
      (X.diagonal() - Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff();
  r.primal_psd_residual = std::max(0.0, -symmetric_eigenvalues(X)(0));
  // y recovered from the diagonal, so only off-diagonal structure remains.
  Eigen::MatrixXd D = S + p.C;
  D.diagonal().setZero();
  r.dual_structure_residual = n > 1 ? D.cwiseAbs().maxCoeff() : 0.0;
  r.dual_psd_residual = std::max(0.0, -symmetric_eigenvalues(S)(0));
  r.complementarity_residual = (X * S).cwiseAbs().maxCoeff();
  return r;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

int numerical_rank(const Eigen::MatrixXd& M, double tol) {
  const Eigen::VectorXd ev = symmetric_eigenvalues(M);
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return static_cast<int>((ev.cwiseAbs().array() > tol * scale).count());
}

int pataki_rank_bound(int n) {
  int r = 0;
  while ((r + 1) * (r + 2) / 2 <= n) ++r;
  return r;
}

RankReport rank_report(const SdpSolution& sol, double tol) {
  RankReport rep;
  rep.tolerance_used = tol;
  rep.eigenvalues_X = symmetric_eigenvalues(sol.X);
  rep.eigenvalues_S = symmetric_eigenvalues(sol.S);
  const auto count_above = [tol](const Eigen::VectorXd& ev) {
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    return static_cast<int>((ev.cwiseAbs().array() > tol * scale).count());
  };
  rep.rank_X = count_above(rep.eigenvalues_X);
  rep.rank_S = count_above(rep.eigenvalues_S);
  const int n = static_cast<int>(sol.X.rows());
  rep.strictly_complementary = (rep.rank_X + rep.rank_S == n);
  rep.exceeds_pataki_bound = rep.rank_X > pataki_rank_bound(n);
  return rep;
}

bool rank_is_ambiguous(const Eigen::VectorXd& eigenvalues, double tol) {
  const double scale = std::max(1.0, eigenvalues.cwiseAbs().maxCoeff());
  const double threshold = tol * scale;
  for (int i = 0; i < eigenvalues.size(); ++i) {
    const double a = std::abs(eigenvalues(i));
    if (a > threshold / 10.0 && a < threshold * 10.0) return true;
  }
  return false;
}

}  // namespace cutrank
