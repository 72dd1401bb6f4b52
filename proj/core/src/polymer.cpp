#include "polygas/polymer.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "polygas/detail/engine_impl.hpp"
#include "polygas/trees.hpp"
#include "polygas/util.hpp"
#include "polygas/zeta.hpp"

namespace polygas {

namespace {

constexpr int key_separator = std::numeric_limits<int>::min();

bool bodies_disjoint(const Contour& a, const Contour& b) {
  std::vector<int> shared;
  std::set_intersection(a.body.bonds.begin(), a.body.bonds.end(),
                        b.body.bonds.begin(), b.body.bonds.end(),
                        std::back_inserter(shared));
  return shared.empty();
}

bool compatible_nothrow(const Contour& a, const Contour& b, const ModelParams& params) {
  if (a.body == b.body) return false;
  if (!bodies_disjoint(a, b)) return false;
  return is_compatible(a, b, params);
}

bool positively_compatible_nothrow(const Contour& a, const Contour& b,
                                   const ModelParams& params) {
  if (!compatible_nothrow(a, b, params)) return false;
  std::vector<int> shared;
  std::set_intersection(a.interior.sites.begin(), a.interior.sites.end(),
                        b.interior.sites.begin(), b.interior.sites.end(),
                        std::back_inserter(shared));
  return shared.empty();
}

}  // namespace

std::vector<int> Polymer::key() const {
  std::vector<int> k;
  for (const auto& g : contours.contours) {
    k.push_back(key_separator);
    k.insert(k.end(), g.body.bonds.begin(), g.body.bonds.end());
  }
  return k;
}

bool polymer_compatible(const Polymer& p1, const Polymer& p2, const ModelParams& params) {
  if (p1.empty() || p2.empty())
    throw std::invalid_argument("polymer_compatible: empty polymer");
  if (p1.key() == p2.key()) return false;  // hard-core: never self-compatible

  for (const auto& g1 : p1.contours.contours)
    for (const auto& g2 : p2.contours.contours)
      if (!compatible_nothrow(g1, g2, params)) return false;

  // (i) elementwise positive compatibility
  bool all_positive = true;
  for (const auto& g1 : p1.contours.contours)
    for (const auto& g2 : p2.contours.contours)
      if (!positively_compatible_nothrow(g1, g2, params)) all_positive = false;
  if (all_positive) return true;

  // (ii)/(iii) one polymer internal to a single contour of the other
  auto internal_to = [&](const Polymer& inner, const Polymer& outer) {
    for (const auto& host : outer.contours.contours) {
      bool all = true;
      for (const auto& g : inner.contours.contours)
        if (!interior_subset(g, host)) {
          all = false;
          break;
        }
      if (all) return true;
    }
    return false;
  };
  return internal_to(p2, p1) || internal_to(p1, p2);
}

std::vector<int> nesting_parents(const ContourCollection& gamma_set,
                                 const ModelParams& params) {
  (void)params;
  const auto& gs = gamma_set.contours;
  std::vector<int> parent(gs.size(), -1);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    int best = -1;
    for (std::size_t j = 0; j < gs.size(); ++j) {
      if (i == j) continue;
      if (!interior_subset(gs[i], gs[j])) continue;
      if (best < 0 || gs[j].interior.size() < gs[best].interior.size())
        best = static_cast<int>(j);
    }
    parent[i] = best;
  }
  return parent;
}

PolymerSet coarsest_decomposition(const ContourCollection& gamma_set,
                                  const ModelParams& params) {
  if (gamma_set.kind != CollectionKind::m_partition)
    throw std::invalid_argument("coarsest_decomposition: input must be an M-partition");
  auto parent = nesting_parents(gamma_set, params);
  // one block per distinct parent; all external contours share one block
  std::map<int, std::vector<Contour>> blocks;
  for (std::size_t i = 0; i < gamma_set.contours.size(); ++i)
    blocks[parent[i]].push_back(gamma_set.contours[i]);
  PolymerSet out;
  out.compatible = true;
  for (auto& [p, contours] : blocks) {
    (void)p;
    Polymer poly;
    std::sort(contours.begin(), contours.end());
    poly.contours.contours = std::move(contours);
    poly.contours.kind = CollectionKind::positive;
    out.polymers.push_back(std::move(poly));
  }
  std::sort(out.polymers.begin(), out.polymers.end(),
            [](const Polymer& a, const Polymer& b) { return a.key() < b.key(); });
  return out;
}

std::vector<Polymer> enumerate_polymers(const ModelParams& params, int max_diam) {
  params.validate();
  const int n = static_cast<int>(params.lambda.size());
  if (n > 16) throw std::invalid_argument("enumerate_polymers: |lambda| > 16 refused");
  std::vector<Polymer> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    SiteSet s;
    for (int b = 0; b < n; ++b)
      if (mask & (1u << b)) s.sites.push_back(params.lambda[b]);
    ContourCollection gamma = m_partition(boundary(s), params);
    if (max_diam >= 0) {
      bool capped = false;
      for (const auto& g : gamma.contours)
        if (g.diam > max_diam) capped = true;
      if (capped) continue;
    }
    bool positive = true;
    for (std::size_t i = 0; i < gamma.contours.size() && positive; ++i)
      for (std::size_t j = i + 1; j < gamma.contours.size() && positive; ++j)
        if (!positively_compatible_nothrow(gamma.contours[i], gamma.contours[j], params))
          positive = false;
    if (!positive) continue;
    Polymer p;
    p.contours = std::move(gamma);
    p.contours.kind = CollectionKind::positive;
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(),
            [](const Polymer& a, const Polymer& b) { return a.key() < b.key(); });
  return out;
}

std::vector<PolymerSet> enumerate_compatible_polymer_sets(const ModelParams& params) {
  params.validate();
  const int n = static_cast<int>(params.lambda.size());
  if (n > 8)
    throw std::invalid_argument("enumerate_compatible_polymer_sets: |lambda| > 8 refused");
  std::vector<PolymerSet> out;
  out.push_back(PolymerSet{{}, true});  // the empty collection

  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    SiteSet s;
    for (int b = 0; b < n; ++b)
      if (mask & (1u << b)) s.sites.push_back(params.lambda[b]);
    ContourCollection gamma = m_partition(boundary(s), params);
    PolymerSet coarsest = coarsest_decomposition(gamma, params);

    // all refinements: independent set partitions of each block
    std::vector<std::vector<std::vector<std::vector<Contour>>>> block_options;
    for (const auto& block : coarsest.polymers) {
      const auto& cs = block.contours.contours;
      std::vector<std::vector<std::vector<Contour>>> options;
      for_each_set_partition(static_cast<int>(cs.size()), [&](const std::vector<int>& part) {
        int nblocks = cs.empty() ? 0 : 1 + *std::max_element(part.begin(), part.end());
        std::vector<std::vector<Contour>> grouping(nblocks);
        for (std::size_t i = 0; i < cs.size(); ++i) grouping[part[i]].push_back(cs[i]);
        options.push_back(std::move(grouping));
      });
      block_options.push_back(std::move(options));
    }
    std::vector<std::size_t> pick(block_options.size(), 0);
    while (true) {
      PolymerSet x;
      x.compatible = true;
      for (std::size_t b = 0; b < block_options.size(); ++b)
        for (auto& group : block_options[b][pick[b]]) {
          Polymer p;
          p.contours.contours = group;
          std::sort(p.contours.contours.begin(), p.contours.contours.end());
          p.contours.kind = CollectionKind::positive;
          x.polymers.push_back(std::move(p));
        }
      std::sort(x.polymers.begin(), x.polymers.end(),
                [](const Polymer& a, const Polymer& b) { return a.key() < b.key(); });
      out.push_back(std::move(x));
      std::size_t b = 0;
      while (b < pick.size() && ++pick[b] == block_options[b].size()) pick[b++] = 0;
      if (b == pick.size()) break;
    }
  }
  return out;
}

namespace detail {

PolymerTermData collect_polymer_terms(const Polymer& p, const ModelParams& params) {
  if (p.empty()) throw std::invalid_argument("polymer terms: empty polymer");
  PolymerTermData data;
  data.n_contours = p.size();

  SiteSet support = p.contours.merged_interior();
  const int n = support.size();
  if (n > 20) throw std::invalid_argument("polymer terms: interior too large");

  std::vector<SpinFlipConfig> target_bodies;
  for (const auto& g : p.contours.contours) target_bodies.push_back(g.body);

  // decorated partitions with external set p: scan subsets of the interior
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    SiteSet s;
    for (int b = 0; b < n; ++b)
      if (mask & (1u << b)) s.sites.push_back(support.sites[b]);
    ContourCollection decorated = m_partition(boundary(s), params);
    ContourCollection ext = external_contours(decorated, params);
    if (ext.size() != p.size()) continue;
    bool match = true;
    for (int i = 0; i < ext.size(); ++i)
      if (!(ext.contours[i].body == target_bodies[i])) match = false;
    if (!match) continue;

    std::vector<std::vector<int>> iota_interiors;
    for (const auto& g : ext.contours)
      iota_interiors.push_back(iota(g, decorated, params).merged_interior().sites);
    data.big_z_terms.push_back(std::move(iota_interiors));
  }

  // per-contour internal decorations
  for (const auto& g : p.contours.contours) {
    std::vector<std::vector<int>> supports;
    const auto& inner = g.interior.sites;
    const int m = static_cast<int>(inner.size());
    if (m > 20) throw std::invalid_argument("polymer terms: contour interior too large");
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      SiteSet s;
      for (int b = 0; b < m; ++b)
        if (mask & (1u << b)) s.sites.push_back(inner[b]);
      ContourCollection decoration = m_partition(boundary(s), params);
      bool internal = true;
      for (const auto& d : decoration.contours) {
        if (!interior_subset(d, g) || !compatible_nothrow(d, g, params)) {
          internal = false;
          break;
        }
      }
      if (internal) supports.push_back(s.sites);
    }
    data.star_supports.push_back(std::move(supports));
  }
  return data;
}

}  // namespace detail

double big_z(const Polymer& p, const ModelParams& params) {
  params.validate();
  detail::EnergyContext<double> ctx{params.alpha, params.beta,
                                    riemann_zeta(params.alpha),
                                    params.has_field() ? &params.field : nullptr};
  return detail::big_z_t<double>(detail::collect_polymer_terms(p, params), ctx);
}

double big_z_star(const Polymer& p, const ModelParams& params) {
  params.validate();
  detail::EnergyContext<double> ctx{params.alpha, params.beta,
                                    riemann_zeta(params.alpha),
                                    params.has_field() ? &params.field : nullptr};
  return detail::big_z_star_t<double>(detail::collect_polymer_terms(p, params), ctx);
}

Activity activity(const Polymer& p, const ModelParams& params) {
  params.validate();
  detail::EnergyContext<double> ctx{params.alpha, params.beta,
                                    riemann_zeta(params.alpha),
                                    params.has_field() ? &params.field : nullptr};
  auto data = detail::collect_polymer_terms(p, params);
  Activity a;
  a.numerator = detail::big_z_t<double>(data, ctx);
  a.denominator = detail::big_z_star_t<double>(data, ctx);
  a.value = a.numerator / a.denominator;
  return a;
}

double upper_activity(const Polymer& p, const ModelParams& params) {
  params.validate();
  const int k = p.size();
  if (k > 9) throw std::invalid_argument("upper_activity: more than 9 contours");
  double exponent = 0.0;
  for (const auto& g : p.contours.contours) exponent -= 0.5 * params.beta * g.energy;
  // interaction matrix between the bare contours
  std::vector<std::vector<double>> phi_m(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      phi_m[i][j] = phi_m[j][i] =
          phi(p.contours.contours[i].interior, p.contours.contours[j].interior, params);
  KahanSum tree_sum;
  for_each_labeled_tree(k, [&](const LabeledTree& t) {
    double prod = 1.0;
    for (auto [a, b] : t.edges) prod *= phi_m[a][b];
    tree_sum.add(prod);
  });
  double zbar = std::exp(exponent) * tree_sum.value();
  if (params.has_field())
    zbar *= std::exp(params.beta *
                     field_energy_abs(p.contours.merged_interior(), params));
  return zbar;
}

double polymer_partition_function(const ModelParams& params) {
  params.validate();
  auto sets = enumerate_compatible_polymer_sets(params);
  detail::EnergyContext<double> ctx{params.alpha, params.beta,
                                    riemann_zeta(params.alpha),
                                    params.has_field() ? &params.field : nullptr};
  std::map<std::vector<int>, double> cache;
  KahanSum z;
  for (const auto& x : sets) {
    double prod = 1.0;
    for (const auto& p : x.polymers) {
      auto key = p.key();
      auto it = cache.find(key);
      if (it == cache.end()) {
        auto data = detail::collect_polymer_terms(p, params);
        double value = detail::activity_t<double>(data, ctx);
        it = cache.emplace(std::move(key), value).first;
      }
      prod *= it->second;
    }
    z.add(prod);
  }
  return z.value();
}

double mayer_expand_residual(int n, const std::function<double(int, int)>& weight) {
  if (n < 1 || n > 7) throw std::invalid_argument("mayer_expand_residual: n out of [1, 7]");
  double lhs = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) lhs *= 1.0 + weight(i, j);
  KahanSum rhs;
  for_each_set_partition(n, [&](const std::vector<int>& part) {
    int blocks = 1 + *std::max_element(part.begin(), part.end());
    double prod = 1.0;
    for (int b = 0; b < blocks && prod != 0.0; ++b) {
      std::vector<int> members;
      for (int i = 0; i < n; ++i)
        if (part[i] == b) members.push_back(i);
      std::function<double(int, int)> sub = [&](int a, int c) {
        return weight(members[a], members[c]);
      };
      prod *= connected_graph_sum(static_cast<int>(members.size()), sub);
    }
    rhs.add(prod);
  });
  return std::abs(lhs - rhs.value());
}

}  // namespace polygas
