#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace polygas {

/// Labeled tree on vertex set {0,...,n-1}. Edges are normalized (first <
/// second) and sorted.
struct LabeledTree {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  std::vector<int> degrees() const;
  std::vector<int> leaves() const;
  std::vector<int> neighbors(int v) const;
  void normalize();

  auto operator<=>(const LabeledTree&) const = default;
};

/// Streams all n^(n-2) labeled trees on [0,n) in deterministic (Prufer
/// lexicographic) order. Refuses n > 9.
void for_each_labeled_tree(int n, const std::function<void(const LabeledTree&)>& fn);
std::vector<LabeledTree> labeled_trees(int n);

LabeledTree prufer_decode(const std::vector<int>& seq, int n);

/// All connected subgraphs of the given edge set that span {0,...,n-1},
/// as edge lists. Refuses n > 8.
std::vector<std::vector<std::pair<int, int>>> connected_graphs(
    int n, const std::vector<std::pair<int, int>>& edges);

/// Number of labeled spanning trees inside the given edge set (Prufer
/// enumeration with a containment filter). Refuses n > 9.
long long spanning_tree_count(int n, const std::vector<std::pair<int, int>>& edges);

/// Sum over connected graphs G spanning {0,...,n-1} of prod_{e in G} w_e,
/// where w is a symmetric pair-weight table (w[i][j]). Computed by rooted
/// subset convolution in O(3^n); exact for integer-valued weights. This is
/// the connected part of prod_{i<j} (1 + w_ij). Refuses n > 16.
double connected_graph_sum(int n, const std::function<double(int, int)>& weight);

bool edges_form_connected_spanning(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace polygas
