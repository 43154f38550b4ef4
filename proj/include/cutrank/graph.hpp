#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace cutrank {

struct WeightedEdge {
  int i = 0;
  int j = 0;
  double w = 0.0;
};

// Undirected weighted graph on vertices 0..n-1. Simple by construction:
// no self-loops, at most one edge per unordered pair, finite weights.
// Zero weights are legal here but rejected by the cycle analysis, which
// divides by |w|. Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph(int n, std::vector<WeightedEdge> edges);

  static WeightedGraph empty(int n) { return WeightedGraph(n, {}); }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<WeightedEdge>& edges() const { return edges_; }

  bool has_edge(int i, int j) const;
  // Throws if the edge is absent.
  double weight(int i, int j) const;

  bool has_zero_weight_edge() const;
  double total_weight() const;

  // Same graph topology with a fresh weight vector (in stored edge order).
  WeightedGraph with_weights(const Eigen::VectorXd& w) const;
  Eigen::VectorXd weight_vector() const;

 private:
  int n_;
  std::vector<WeightedEdge> edges_;  // normalized to i < j
};

// L[i][j] = -w_ij on edges, L[i][i] = sum_k w_ik, 0 elsewhere.
// Diagonal is accumulated as the negated off-diagonal row sum, so every row
// sums to zero exactly in floating point.
Eigen::MatrixXd laplacian(const WeightedGraph& g);

// C = (1/4) L(G,w), the objective matrix of the max-cut relaxation.
Eigen::MatrixXd cost_matrix(const WeightedGraph& g);

// Two graphs to be glued along a shared clique of size |map1| = |map2|,
// which must be 1 (vertex sum) or 2 (edge sum). map1[k] in g1 is identified
// with map2[k] in g2; for edge sums the shared edge must exist in both
// graphs with identical weight.
struct CliqueSumSpec {
  WeightedGraph g1;
  WeightedGraph g2;
  std::vector<int> map1;
  std::vector<int> map2;
};

// Glued graph plus the relabeling applied to each input:
// relabel1[v] / relabel2[v] is the result-label of input vertex v.
struct CliqueSumResult {
  WeightedGraph graph;
  std::vector<int> relabel1;
  std::vector<int> relabel2;
};

// Canonical labeling: g1 keeps its labels except that the glued vertex is
// swapped to index n1-1; g2's glued vertex also lands on n1-1 and the
// remaining g2 vertices follow in their original order. This places the
// shared vertex exactly between the two diagonal blocks.
CliqueSumResult vertex_sum(const CliqueSumSpec& spec);

// Same idea with a shared edge: g1's glued pair is swapped to (n1-2, n1-1),
// g2's pair lands there too, remaining g2 vertices follow in order. The
// shared edge appears once in the result.
CliqueSumResult edge_sum(const CliqueSumSpec& spec);

// Clique K_k, edges in lexicographic order (0,1),(0,2),...,(1,2),...
WeightedGraph clique_graph(int k, const std::vector<double>& weights = {});

// Cycle C_k, edges (i, i+1 mod k) in index order.
WeightedGraph cycle_graph(int k, const std::vector<double>& weights = {});

// Named topologies with fixed edge orderings (weights map onto that order;
// default all ones):
//   k3,c4,c5,c6  - cliques/cycles as above; also parametric "kN"/"cN"
//   diamond      - K4 minus edge (0,3); edges (0,1),(0,2),(1,2),(1,3),(2,3)
//   butterfly    - vertex sum of two triangles at vertex 2;
//                  edges (0,1),(0,2),(1,2),(2,3),(2,4),(3,4)
//   fish         - vertex sum of a triangle and C4 at vertex 2;
//                  edges (0,1),(0,2),(1,2),(2,3),(3,4),(4,5),(2,5)
WeightedGraph named_graph(const std::string& name,
                          const std::vector<double>& weights = {});

}  // namespace cutrank
