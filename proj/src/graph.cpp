#include "cutrank/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cutrank {

namespace {

std::string edge_str(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// Permutation of 0..n-1 that sends from[k] to to[k] and disturbs as few
// other labels as possible (a sequence of swaps).
std::vector<int> placing_permutation(int n, const std::vector<int>& from,
                                     const std::vector<int>& to) {
  std::vector<int> perm(n), inv(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::iota(inv.begin(), inv.end(), 0);
  for (std::size_t k = 0; k < from.size(); ++k) {
    const int f = from[k];
    const int t = to[k];
    const int cur = perm[f];
    const int occupant = inv[t];
    std::swap(perm[f], perm[occupant]);
    inv[cur] = occupant;
    inv[t] = f;
  }
  return perm;
}

std::vector<WeightedEdge> relabel_edges(const WeightedGraph& g,
                                        const std::vector<int>& perm) {
  std::vector<WeightedEdge> out;
  out.reserve(g.edges().size());
  for (const auto& e : g.edges()) out.push_back({perm[e.i], perm[e.j], e.w});
  return out;
}

void check_clique_spec(const CliqueSumSpec& spec, std::size_t k) {
  if (spec.map1.size() != k || spec.map2.size() != k)
    throw std::invalid_argument("clique sum: expected " + std::to_string(k) +
                                " glued vertices");
  auto check_range = [](const WeightedGraph& g, const std::vector<int>& m,
                        const char* which) {
    for (int v : m)
      if (v < 0 || v >= g.vertex_count())
        throw std::invalid_argument(std::string("clique sum: vertex out of "
                                                "range in ") +
                                    which);
  };
  check_range(spec.g1, spec.map1, "map1");
  check_range(spec.g2, spec.map2, "map2");
  if (k == 2) {
    if (spec.map1[0] == spec.map1[1] || spec.map2[0] == spec.map2[1])
      throw std::invalid_argument("clique sum: repeated glued vertex");
    if (!spec.g1.has_edge(spec.map1[0], spec.map1[1]) ||
        !spec.g2.has_edge(spec.map2[0], spec.map2[1]))
      throw std::invalid_argument(
          "edge sum: glued pair is not an edge in both graphs");
    const double w1 = spec.g1.weight(spec.map1[0], spec.map1[1]);
    const double w2 = spec.g2.weight(spec.map2[0], spec.map2[1]);
    if (w1 != w2)
      throw std::invalid_argument(
          "edge sum: shared edge weight mismatch (" + std::to_string(w1) +
          " vs " + std::to_string(w2) + ")");
  }
}

}  // namespace

WeightedGraph::WeightedGraph(int n, std::vector<WeightedEdge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw std::invalid_argument("graph: need at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges_) {
    if (e.i < 0 || e.i >= n_ || e.j < 0 || e.j >= n_)
      throw std::invalid_argument("graph: vertex out of range in edge " +
                                  edge_str(e.i, e.j));
    if (e.i == e.j)
      throw std::invalid_argument("graph: self-loop " + edge_str(e.i, e.j));
    if (!std::isfinite(e.w))
      throw std::invalid_argument("graph: non-finite weight on edge " +
                                  edge_str(e.i, e.j));
    if (e.i > e.j) std::swap(e.i, e.j);
    if (!seen.insert({e.i, e.j}).second)
      throw std::invalid_argument("graph: duplicate edge " +
                                  edge_str(e.i, e.j));
  }
}

bool WeightedGraph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::any_of(edges_.begin(), edges_.end(),
                     [&](const WeightedEdge& e) { return e.i == i && e.j == j; });
}

double WeightedGraph::weight(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (const auto& e : edges_)
    if (e.i == i && e.j == j) return e.w;
  throw std::invalid_argument("graph: no edge " + edge_str(i, j));
}

bool WeightedGraph::has_zero_weight_edge() const {
  return std::any_of(edges_.begin(), edges_.end(),
                     [](const WeightedEdge& e) { return e.w == 0.0; });
}

double WeightedGraph::total_weight() const {
  double t = 0.0;
  for (const auto& e : edges_) t += e.w;
  return t;
}

WeightedGraph WeightedGraph::with_weights(const Eigen::VectorXd& w) const {
  if (w.size() != static_cast<Eigen::Index>(edges_.size()))
    throw std::invalid_argument("with_weights: expected " +
                                std::to_string(edges_.size()) + " weights, got " +
                                std::to_string(w.size()));
  std::vector<WeightedEdge> es = edges_;
  for (std::size_t k = 0; k < es.size(); ++k) es[k].w = w[static_cast<int>(k)];
  return WeightedGraph(n_, std::move(es));
}

Eigen::VectorXd WeightedGraph::weight_vector() const {
  Eigen::VectorXd w(edges_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) w[static_cast<int>(k)] = edges_[k].w;
  return w;
}

Eigen::MatrixXd laplacian(const WeightedGraph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    L(e.i, e.j) = -e.w;
    L(e.j, e.i) = -e.w;
    L(e.i, e.i) += e.w;
    L(e.j, e.j) += e.w;
  }
  return L;
}

Eigen::MatrixXd cost_matrix(const WeightedGraph& g) {
  return 0.25 * laplacian(g);
}

CliqueSumResult vertex_sum(const CliqueSumSpec& spec) {
  check_clique_spec(spec, 1);
  const int n1 = spec.g1.vertex_count();
  const int n2 = spec.g2.vertex_count();
  const int n = n1 + n2 - 1;

  std::vector<int> perm1 = placing_permutation(n1, spec.map1, {n1 - 1});
  std::vector<int> perm2(n2);
  perm2[spec.map2[0]] = n1 - 1;
  int next = n1;
  for (int v = 0; v < n2; ++v)
    if (v != spec.map2[0]) perm2[v] = next++;

  std::vector<WeightedEdge> edges = relabel_edges(spec.g1, perm1);
  const auto e2 = relabel_edges(spec.g2, perm2);
  edges.insert(edges.end(), e2.begin(), e2.end());
  return {WeightedGraph(n, std::move(edges)), std::move(perm1),
          std::move(perm2)};
}

CliqueSumResult edge_sum(const CliqueSumSpec& spec) {
  check_clique_spec(spec, 2);
  const int n1 = spec.g1.vertex_count();
  const int n2 = spec.g2.vertex_count();
  if (n1 < 2 || n2 < 2)
    throw std::invalid_argument("edge sum: graphs must have >= 2 vertices");
  const int n = n1 + n2 - 2;

  std::vector<int> perm1 =
      placing_permutation(n1, spec.map1, {n1 - 2, n1 - 1});
  std::vector<int> perm2(n2);
  perm2[spec.map2[0]] = n1 - 2;
  perm2[spec.map2[1]] = n1 - 1;
  int next = n1;
  for (int v = 0; v < n2; ++v)
    if (v != spec.map2[0] && v != spec.map2[1]) perm2[v] = next++;

  std::vector<WeightedEdge> edges = relabel_edges(spec.g1, perm1);
  for (const auto& e : relabel_edges(spec.g2, perm2)) {
    const bool is_shared = (std::min(e.i, e.j) == n1 - 2) &&
                           (std::max(e.i, e.j) == n1 - 1);
    if (!is_shared) edges.push_back(e);  // keep one copy of the shared edge
  }
  return {WeightedGraph(n, std::move(edges)), std::move(perm1),
          std::move(perm2)};
}

WeightedGraph clique_graph(int k, const std::vector<double>& weights) {
  if (k < 1) throw std::invalid_argument("clique_graph: need k >= 1");
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) edges.push_back({i, j, 1.0});
  WeightedGraph g(k, std::move(edges));
  if (weights.empty()) return g;
  return g.with_weights(Eigen::Map<const Eigen::VectorXd>(
      weights.data(), static_cast<Eigen::Index>(weights.size())));
}

WeightedGraph cycle_graph(int k, const std::vector<double>& weights) {
  if (k < 3) throw std::invalid_argument("cycle_graph: need k >= 3");
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k, 1.0});
  WeightedGraph g(k, std::move(edges));
  if (weights.empty()) return g;
  return g.with_weights(Eigen::Map<const Eigen::VectorXd>(
      weights.data(), static_cast<Eigen::Index>(weights.size())));
}

WeightedGraph named_graph(const std::string& name,
                          const std::vector<double>& weights) {
  std::string id;
  for (char c : name) id.push_back(static_cast<char>(std::tolower(c)));

  auto from_edges = [&weights](int n, std::vector<WeightedEdge> edges) {
    WeightedGraph g(n, std::move(edges));
    if (weights.empty()) return g;
    return g.with_weights(Eigen::Map<const Eigen::VectorXd>(
        weights.data(), static_cast<Eigen::Index>(weights.size())));
  };

  if (id == "diamond")
    return from_edges(4, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {1, 3, 1.0},
                          {2, 3, 1.0}});
  if (id == "butterfly")
    return from_edges(5, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {2, 3, 1.0},
                          {2, 4, 1.0}, {3, 4, 1.0}});
  if (id == "fish")
    return from_edges(6, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {2, 3, 1.0},
                          {3, 4, 1.0}, {4, 5, 1.0}, {2, 5, 1.0}});
  if (id.size() >= 2 && (id[0] == 'k' || id[0] == 'c')) {
    int k = 0;
    try {
      std::size_t pos = 0;
      k = std::stoi(id.substr(1), &pos);
      if (pos + 1 != id.size()) k = 0;
    } catch (const std::exception&) {
      k = 0;
    }
    if (k > 0)
      return id[0] == 'k' ? clique_graph(k, weights) : cycle_graph(k, weights);
  }
  throw std::invalid_argument("named_graph: unknown graph '" + name + "'");
}

}  // namespace cutrank
