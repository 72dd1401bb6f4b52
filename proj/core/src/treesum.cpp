#include "polygas/treesum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "polygas/util.hpp"

namespace polygas {

bool VertexSystem::tuple_compatible(const std::vector<int>& tuple) const {
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j)
      if (!pair_compatible(tuple[i], tuple[j])) return false;
  return true;
}

double modified_vertex(const VertexSystem& vs, int vertex, double beta) {
  return std::log(vs.vertex_weight(vertex, beta / 2)) -
         std::log(vs.vertex_weight(vertex, beta));
}

double leaf_pruning(const VertexSystem& vs, int vertex, double beta) {
  KahanSum sum;
  for (int other = 0; other < vs.size; ++other)
    sum.add(vs.vertex_weight(other, beta) * vs.edge_weight(other, vertex));
  return sum.value();
}

double contracting(const VertexSystem& vs, const std::vector<int>& tuple, double beta) {
  if (tuple.empty()) throw std::invalid_argument("contracting: empty tuple");
  KahanSum sum;
  for (int v = 0; v < vs.size; ++v) {
    double prod = vs.vertex_weight(v, beta);
    for (int t : tuple) {
      prod *= vs.edge_weight(v, t);
      if (prod == 0.0) break;
    }
    sum.add(prod);
  }
  return sum.value();
}

namespace {

std::vector<double> tree_sum_terms_impl(const VertexSystem& vs, const std::vector<int>& w,
                                        double beta, int n_max, bool global) {
  const int m = static_cast<int>(w.size());
  if (m < 1) throw std::invalid_argument("tree sum: empty pinned tuple");
  if (n_max < m) throw std::invalid_argument("tree sum: n_max below tuple size");
  for (int v : w)
    if (v < 0 || v >= vs.size) throw std::invalid_argument("tree sum: vertex out of range");
  if (global && !vs.tuple_compatible(w))
    throw std::invalid_argument("tree sum: pinned tuple not globally compatible");

  double work = 0;
  for (int n = m; n <= n_max; ++n)
    work += std::pow(static_cast<double>(n), std::max(0, n - 2)) *
            std::pow(static_cast<double>(vs.size), n - m);
  if (work > 2e7) throw std::invalid_argument("tree sum: truncation too large");

  std::vector<double> terms;
  for (int n = m; n <= n_max; ++n) {
    KahanSum term;
    std::vector<int> assign(n);
    for (int i = 0; i < m; ++i) assign[i] = w[i];
    for_each_labeled_tree(n, [&](const LabeledTree& t) {
      // iterate over assignments of the free vertices
      const int free = n - m;
      std::vector<int> idx(free, 0);
      while (true) {
        for (int i = 0; i < free; ++i) assign[m + i] = idx[i];
        bool admissible = !global || vs.tuple_compatible(assign);
        if (admissible) {
          double prod = 1.0;
          for (int i = 0; i < n && prod != 0.0; ++i)
            prod *= vs.vertex_weight(assign[i], beta);
          for (auto [a, b] : t.edges) {
            if (prod == 0.0) break;
            prod *= vs.edge_weight(assign[a], assign[b]);
          }
          term.add(prod);
        }
        int i = 0;
        while (i < free && ++idx[i] == vs.size) idx[i++] = 0;
        if (i == free) break;
      }
    });
    terms.push_back(term.value() / static_cast<double>(factorial(n - m)));
  }
  return terms;
}

}  // namespace

std::vector<double> tree_sum_local_terms(const VertexSystem& vs, const std::vector<int>& w,
                                         double beta, int n_max) {
  return tree_sum_terms_impl(vs, w, beta, n_max, false);
}

std::vector<double> tree_sum_global_terms(const VertexSystem& vs, const std::vector<int>& w,
                                          double beta, int n_max) {
  return tree_sum_terms_impl(vs, w, beta, n_max, true);
}

double tree_sum_local(const VertexSystem& vs, const std::vector<int>& w, double beta,
                      int n_max) {
  auto terms = tree_sum_local_terms(vs, w, beta, n_max);
  KahanSum s;
  for (double t : terms) s.add(t);
  return s.value();
}

double tree_sum_global(const VertexSystem& vs, const std::vector<int>& w, double beta,
                       int n_max) {
  auto terms = tree_sum_global_terms(vs, w, beta, n_max);
  KahanSum s;
  for (double t : terms) s.add(t);
  return s.value();
}

namespace {

void restricted_prufer_rec(int n, int m, std::vector<int>& seq, std::vector<int>& count,
                           int pos, int deficit, std::vector<LabeledTree>& out) {
  const int len = n - 2;
  if (deficit > len - pos) return;  // not enough slots for required occupancies
  if (pos == len) {
    LabeledTree t = prufer_decode(seq, n);
    out.push_back(t);
    return;
  }
  for (int v = 0; v < n; ++v) {
    seq[pos] = v;
    int d = deficit;
    if (v >= m && count[v] < 2) --d;
    ++count[v];
    restricted_prufer_rec(n, m, seq, count, pos + 1, d, out);
    --count[v];
  }
}

}  // namespace

RestrictedTreeFamily restricted_trees(int n, int m) {
  if (m < 2) throw std::invalid_argument("restricted_trees: m must be >= 2");
  if (n < m) throw std::invalid_argument("restricted_trees: n must be >= m");
  RestrictedTreeFamily fam;
  fam.n = n;
  fam.m = m;
  if (n == 2) {
    LabeledTree t;
    t.n = 2;
    t.edges = {{0, 1}};
    fam.trees.push_back(t);
    return fam;
  }
  // vertices m..n-1 must appear at least twice in the Prufer sequence
  // (degree >= 3); this also keeps them off the leaf set
  std::vector<int> seq(n - 2, 0), count(n, 0);
  restricted_prufer_rec(n, m, seq, count, 0, 2 * (n - m), fam.trees);
  std::sort(fam.trees.begin(), fam.trees.end());
  return fam;
}

std::vector<LabeledTree> remove_vertex_expansions(const LabeledTree& tree, int vertex) {
  if (vertex < 0 || vertex >= tree.n)
    throw std::invalid_argument("remove_vertex_expansions: vertex out of range");
  std::vector<int> nbrs = tree.neighbors(vertex);
  auto relabel = [&](int v) { return v < vertex ? v : v - 1; };
  std::set<LabeledTree> distinct;
  std::sort(nbrs.begin(), nbrs.end());
  do {
    LabeledTree t;
    t.n = tree.n - 1;
    for (auto [a, b] : tree.edges)
      if (a != vertex && b != vertex) t.edges.push_back({relabel(a), relabel(b)});
    for (std::size_t i = 0; i + 1 < nbrs.size(); ++i)
      t.edges.push_back({relabel(nbrs[i]), relabel(nbrs[i + 1])});
    t.normalize();
    distinct.insert(std::move(t));
  } while (std::next_permutation(nbrs.begin(), nbrs.end()));
  return {distinct.begin(), distinct.end()};
}

}  // namespace polygas
