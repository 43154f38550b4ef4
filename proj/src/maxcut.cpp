#include "cutrank/maxcut.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cutrank/rng.hpp"

namespace cutrank {

namespace {

void require_cut(const WeightedGraph& g, const CutVector& x) {
  if (x.size() != g.vertex_count())
    throw std::invalid_argument("cut vector length does not match graph");
  for (int i = 0; i < x.size(); ++i)
    if (x(i) != 1.0 && x(i) != -1.0)
      throw std::invalid_argument("cut vector entries must be +/-1");
}

// value >, then lexicographically smaller cut wins.
bool better(double value, const std::vector<double>& x, double best_value,
            const std::vector<double>& best_x) {
  if (value != best_value) return value > best_value;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != best_x[i]) return x[i] < best_x[i];
  return false;
}

}  // namespace

SdpProblem max_cut_sdp(const WeightedGraph& g) { return {cost_matrix(g)}; }

double cut_value(const WeightedGraph& g, const CutVector& x) {
  require_cut(g, x);
  double v = 0.0;
  for (const auto& e : g.edges())
    if (x(e.i) != x(e.j)) v += e.w;
  return v;
}

CutResult brute_force_maxcut(const WeightedGraph& g) {
  const int n = g.vertex_count();
  if (n > 26)
    throw std::invalid_argument(
        "brute_force_maxcut: n = " + std::to_string(n) +
        " exceeds the enumeration guard (26)");

  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.i].push_back({e.j, e.w});
    adj[e.j].push_back({e.i, e.w});
  }

  std::vector<double> x(n, 1.0);
  double value = 0.0;  // all +1: nothing cut
  std::vector<double> best_x = x;
  double best_value = value;

  // Gray code over vertices 1..n-1; one vertex flips per step.
  const std::uint64_t total = 1ull << (n - 1);
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < total; ++k) {
    const std::uint64_t next_gray = k ^ (k >> 1);
    const int v = 1 + __builtin_ctzll(gray ^ next_gray);
    gray = next_gray;
    // Flipping v toggles the cut state of each incident edge.
    for (const auto& [u, w] : adj[v]) value += (x[u] == x[v]) ? w : -w;
    x[v] = -x[v];
    if (better(value, x, best_value, best_x)) {
      best_value = value;
      best_x = x;
    }
  }

  CutResult r;
  r.cut = Eigen::Map<const Eigen::VectorXd>(best_x.data(), n);
  r.value = best_value;
  return r;
}

double sdp_value(const WeightedGraph& g, const SdpSolution& sol) {
  if (sol.X.rows() != g.vertex_count())
    throw std::invalid_argument("sdp_value: solution size mismatch");
  return (cost_matrix(g).cwiseProduct(sol.X)).sum();
}

std::optional<CutVector> recover_cut_if_rank1(const SdpSolution& sol,
                                              double tol) {
  if (numerical_rank(sol.X, tol) != 1) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sol.X);
  const int n = static_cast<int>(sol.X.rows());
  const double lmax = es.eigenvalues()(n - 1);
  if (lmax <= 0.0) return std::nullopt;
  Eigen::VectorXd v = std::sqrt(lmax) * es.eigenvectors().col(n - 1);
  if (v(0) < 0.0) v = -v;
  for (int i = 0; i < n; ++i)
    if (std::abs(std::abs(v(i)) - 1.0) > tol) return std::nullopt;
  CutVector x(n);
  for (int i = 0; i < n; ++i) x(i) = v(i) >= 0.0 ? 1.0 : -1.0;
  return x;
}

CutResult gw_round(const WeightedGraph& g, const SdpSolution& sol, int trials,
                   std::uint64_t seed, double tol) {
  if (trials < 1) throw std::invalid_argument("gw_round: trials must be >= 1");
  const int n = g.vertex_count();
  if (sol.X.rows() != n)
    throw std::invalid_argument("gw_round: solution size mismatch");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sol.X);
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev(0) < -std::sqrt(tol))
    throw std::runtime_error("gw_round: X is not numerically psd");
  // Rows of V are the embedding directions; column i embeds vertex i.
  Eigen::MatrixXd V = ev.cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                      es.eigenvectors().transpose();

  CutResult best;
  best.value = -std::numeric_limits<double>::infinity();
  CutVector x(n);
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) r(i) = rng.gaussian();
    const Eigen::VectorXd proj = V.transpose() * r;
    for (int i = 0; i < n; ++i) x(i) = proj(i) >= 0.0 ? 1.0 : -1.0;
    const double v = cut_value(g, x);
    if (v > best.value) {
      best.value = v;
      best.cut = x;
    }
  }
  return best;
}

Eigen::MatrixXd signed_laplacian(const WeightedGraph& g, const CutVector& x) {
  require_cut(g, x);
  std::vector<WeightedEdge> flipped;
  flipped.reserve(g.edges().size());
  for (const auto& e : g.edges())
    flipped.push_back({e.i, e.j, -x(e.i) * x(e.j) * e.w});
  return laplacian(WeightedGraph(g.vertex_count(), std::move(flipped)));
}

Eigen::MatrixXd dual_for_cut(const WeightedGraph& g, const CutVector& x) {
  const Eigen::MatrixXd L = signed_laplacian(g, x);
  return 0.25 * (x.asDiagonal() * L * x.asDiagonal());
}

bool rank1_certificate(const WeightedGraph& g, const CutVector& x,
                       double tol) {
  return symmetric_eigenvalues(signed_laplacian(g, x))(0) >= -tol;
}

}  // namespace cutrank
