#include "polygas/trees.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "polygas/detail/engine.hpp"

namespace polygas {

std::vector<int> LabeledTree::degrees() const {
  std::vector<int> deg(n, 0);
  for (auto [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

std::vector<int> LabeledTree::leaves() const {
  auto deg = degrees();
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) out.push_back(v);
  return out;
}

std::vector<int> LabeledTree::neighbors(int v) const {
  std::vector<int> out;
  for (auto [a, b] : edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void LabeledTree::normalize() {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
}

LabeledTree prufer_decode(const std::vector<int>& seq, int n) {
  LabeledTree t;
  t.n = n;
  if (n == 1) return t;
  if (static_cast<int>(seq.size()) != n - 2)
    throw std::invalid_argument("prufer_decode: sequence length must be n-2");
  std::vector<int> deg(n, 1);
  for (int v : seq) ++deg[v];
  // attach the smallest current leaf at each step
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int v : seq) {
    t.edges.push_back({leaf, v});
    if (--deg[v] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  t.edges.push_back({leaf, n - 1});
  t.normalize();
  return t;
}

void for_each_labeled_tree(int n, const std::function<void(const LabeledTree&)>& fn) {
  if (n < 1) throw std::invalid_argument("labeled trees: n must be >= 1");
  if (n > 9) throw std::invalid_argument("labeled trees: n > 9 refused");
  if (n == 1 || n == 2) {
    LabeledTree t;
    t.n = n;
    if (n == 2) t.edges = {{0, 1}};
    fn(t);
    return;
  }
  std::vector<int> seq(n - 2, 0);
  while (true) {
    fn(prufer_decode(seq, n));
    int i = n - 3;
    while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
}

std::vector<LabeledTree> labeled_trees(int n) {
  std::vector<LabeledTree> out;
  for_each_labeled_tree(n, [&](const LabeledTree& t) { out.push_back(t); });
  return out;
}

bool edges_form_connected_spanning(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n <= 0) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

std::vector<std::vector<std::pair<int, int>>> connected_graphs(
    int n, const std::vector<std::pair<int, int>>& edges) {
  if (n > 8) throw std::invalid_argument("connected_graphs: n > 8 refused");
  const int m = static_cast<int>(edges.size());
  if (m > 28) throw std::invalid_argument("connected_graphs: too many edges");
  std::vector<std::vector<std::pair<int, int>>> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<std::pair<int, int>> sub;
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) sub.push_back(edges[e]);
    if (edges_form_connected_spanning(n, sub)) out.push_back(std::move(sub));
  }
  return out;
}

long long spanning_tree_count(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n == 1) return 1;
  bool adj[9][9] = {};
  for (auto [a, b] : edges) adj[a][b] = adj[b][a] = true;
  long long count = 0;
  for_each_labeled_tree(n, [&](const LabeledTree& t) {
    for (auto [a, b] : t.edges)
      if (!adj[a][b]) return;
    ++count;
  });
  return count;
}

double connected_graph_sum(int n, const std::function<double(int, int)>& weight) {
  return detail::connected_graph_sum_t<double>(n, weight);
}

}  // namespace polygas
