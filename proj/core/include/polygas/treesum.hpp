#pragma once

#include <functional>
#include <vector>

#include "polygas/trees.hpp"

namespace polygas {

/// Finite weighted vertex system: positive beta-indexed vertex weights, a
/// symmetric nonnegative edge weight, and the induced global compatibility
/// (tuples whose pairs all carry nonzero edge weight).
struct VertexSystem {
  int size = 0;
  std::function<double(int, double)> vertex_weight;  ///< v_beta(theta) > 0
  std::function<double(int, int)> edge_weight;       ///< e(theta1, theta2) >= 0

  bool pair_compatible(int a, int b) const { return edge_weight(a, b) != 0.0; }
  bool tuple_compatible(const std::vector<int>& tuple) const;
};

/// v'_beta = log v_{beta/2} - log v_beta.
double modified_vertex(const VertexSystem& vs, int vertex, double beta);

/// L_beta(theta) = sum_theta' v_beta(theta') e(theta', theta).
double leaf_pruning(const VertexSystem& vs, int vertex, double beta);

/// R^k_beta(theta_1..theta_k) = sum_theta v_beta(theta) prod_i e(theta, theta_i);
/// k = 1 reduces to leaf_pruning.
double contracting(const VertexSystem& vs, const std::vector<int>& tuple, double beta);

/// Truncated sum over labeled trees with the first m vertices pinned to w:
///   sum_{n=m..n_max} 1/(n-m)! sum_{T on [n]} sum_{v : v|[m] = w}
///     prod_i v_beta(v_i) prod_{jk in E(T)} e(v_j, v_k).
/// tree_sum_global restricts the tuples to globally compatible ones.
/// Refuses truncations beyond roughly 2e7 enumerated (tree, tuple) pairs.
double tree_sum_local(const VertexSystem& vs, const std::vector<int>& w,
                      double beta, int n_max);
double tree_sum_global(const VertexSystem& vs, const std::vector<int>& w,
                       double beta, int n_max);

/// Per-size contributions (index 0 is the n = m term); their sum is the
/// truncated tree sum above.
std::vector<double> tree_sum_local_terms(const VertexSystem& vs, const std::vector<int>& w,
                                         double beta, int n_max);
std::vector<double> tree_sum_global_terms(const VertexSystem& vs, const std::vector<int>& w,
                                          double beta, int n_max);

/// Trees on [n] whose leaves lie in [m] and whose remaining vertices have
/// degree >= 3. Empty whenever n > 2m - 2.
struct RestrictedTreeFamily {
  int n = 0;
  int m = 0;
  std::vector<LabeledTree> trees;
};

/// Enumerates the family by occupancy-constrained Prufer search (each vertex
/// beyond the first m must appear at least twice in the sequence), with
/// infeasibility pruning; exhaustive for any n.
RestrictedTreeFamily restricted_trees(int n, int m);

/// Replaces the star at `vertex` (0-based, degree d) by a path through its
/// neighbors, one tree per neighbor permutation; the map is two-to-one, and
/// the distinct resulting trees are returned. Vertices keep their labels
/// except that `vertex` disappears and labels above it shift down by one.
std::vector<LabeledTree> remove_vertex_expansions(const LabeledTree& tree, int vertex);

}  // namespace polygas
