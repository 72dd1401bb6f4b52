#include "polygas/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polygas/detail/engine_impl.hpp"
#include "polygas/trees.hpp"
#include "polygas/util.hpp"
#include "polygas/zeta.hpp"

namespace polygas {

ClusterTuple ClusterTuple::from_polymers(const std::vector<Polymer>& tuple,
                                         const ModelParams& params) {
  ClusterTuple ct;
  ct.n = static_cast<int>(tuple.size());
  for (int i = 0; i < ct.n; ++i)
    for (int j = i + 1; j < ct.n; ++j)
      if (!polymer_compatible(tuple[i], tuple[j], params)) ct.incompat_edges.push_back({i, j});
  return ct;
}

double ursell(const ClusterTuple& ct) {
  if (ct.n < 1) throw std::invalid_argument("ursell: empty tuple");
  if (ct.n > 8) throw std::invalid_argument("ursell: n > 8 refused");
  bool adj[8][8] = {};
  for (auto [a, b] : ct.incompat_edges) adj[a][b] = adj[b][a] = true;
  std::function<double(int, int)> w = [&](int i, int j) { return adj[i][j] ? -1.0 : 0.0; };
  return detail::connected_graph_sum_t<double>(ct.n, w);
}

long long penrose_bound(const ClusterTuple& ct) {
  if (ct.n < 1) throw std::invalid_argument("penrose_bound: empty tuple");
  if (ct.n > 9) throw std::invalid_argument("penrose_bound: n > 9 refused");
  return spanning_tree_count(ct.n, ct.incompat_edges);
}

TruncatedSeries truncated_log_z(const ModelParams& params, int order, int diam_cap) {
  auto out = detail::truncated_log_z_t<double>(params, order, diam_cap, params.alpha,
                                               params.beta, riemann_zeta(params.alpha));
  TruncatedSeries s;
  s.order = order;
  s.terms = out.terms;
  s.partial_sums = out.partials;
  s.reference_log_z = out.log_z;
  s.polymer_count = out.polymer_count;
  s.diam_cap = diam_cap;
  return s;
}

PeierlsSums peierls_sum(const ModelParams& params, double beta, int max_diam) {
  PeierlsSums out;
  out.beta = beta;
  out.max_diam = max_diam;

  ModelParams p = params;
  p.beta = beta;
  auto classes = enumerate_contour_classes(p, max_diam);

  KahanSum class_sum, class_weighted;
  for (const auto& g : classes) {
    double w = std::exp(-beta * g.energy);
    class_sum.add(w);
    class_weighted.add(g.interior.size() * w);
  }
  out.class_sum = class_sum.value();
  out.class_weighted = class_weighted.value();

  // direct sum over contours containing the origin: every translate of a
  // class that brings a minus site onto 0, with the energy recomputed at the
  // translated position
  KahanSum origin;
  for (const auto& g : classes) {
    for (int site : g.interior.sites) {
      SiteSet shifted;
      shifted.sites.reserve(g.interior.sites.size());
      for (int x : g.interior.sites) shifted.sites.push_back(x - site);
      origin.add(std::exp(-beta * hamiltonian(shifted, p)));
    }
  }
  out.origin_sum = origin.value();

  double tol = 1e-12 * (1.0 + std::abs(out.class_weighted));
  out.sandwich_ok = out.class_sum <= out.origin_sum + tol &&
                    std::abs(out.origin_sum - out.class_weighted) <= tol;
  return out;
}

}  // namespace polygas
