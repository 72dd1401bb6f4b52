#include "polygas/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "polygas/util.hpp"

namespace polygas {

namespace {

double pair_threshold(const ModelParams& params, int diam_a, int diam_b) {
  return params.m_param *
         std::pow(static_cast<double>(std::min(diam_a, diam_b)), params.dist_exponent);
}

Contour build_contour_unchecked(const SpinFlipConfig& body, const ModelParams& params) {
  Contour g;
  g.body = body;
  g.interior = minus_interior(body);
  g.diam = body.diameter();
  g.energy = hamiltonian(g.interior, params);
  return g;
}

struct Cut {
  int i, j;
};

/// All contiguous even bond ranges that are far from their complement.
std::vector<Cut> far_cuts(const std::vector<int>& b, const ModelParams& params) {
  const int n = static_cast<int>(b.size());
  std::vector<Cut> cuts;
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; j += 2) {
      if ((j - i + 1) % 2 != 0) continue;
      if (i == 0 && j == n - 1) continue;
      double gap_l = i > 0 ? (b[i] - b[i - 1]) / 2.0 : inf;
      double gap_r = j + 1 < n ? (b[j + 1] - b[j]) / 2.0 : inf;
      double dist = std::min(gap_l, gap_r);
      int diam_range = (b[j] - b[i]) / 2;
      int diam_comp;
      if (i == 0)
        diam_comp = (b[n - 1] - b[j + 1]) / 2;
      else if (j == n - 1)
        diam_comp = (b[i - 1] - b[0]) / 2;
      else
        diam_comp = (b[n - 1] - b[0]) / 2;
      if (dist > pair_threshold(params, diam_range, diam_comp)) cuts.push_back({i, j});
    }
  }
  return cuts;
}

using CutChooser = std::function<std::size_t(std::size_t)>;

void split_rec(std::vector<int> bonds, const ModelParams& params,
               const CutChooser& choose, std::vector<std::vector<int>>& parts) {
  auto cuts = far_cuts(bonds, params);
  if (cuts.empty()) {
    parts.push_back(std::move(bonds));
    return;
  }
  Cut c = cuts[choose(cuts.size())];
  std::vector<int> range(bonds.begin() + c.i, bonds.begin() + c.j + 1);
  std::vector<int> comp;
  comp.insert(comp.end(), bonds.begin(), bonds.begin() + c.i);
  comp.insert(comp.end(), bonds.begin() + c.j + 1, bonds.end());
  split_rec(std::move(range), params, choose, parts);
  split_rec(std::move(comp), params, choose, parts);
}

ContourCollection partition_with_chooser(const SpinFlipConfig& cfg,
                                         const ModelParams& params,
                                         const CutChooser& choose) {
  cfg.validate();
  if (cfg.empty()) throw std::invalid_argument("m_partition: empty configuration");
  std::vector<std::vector<int>> parts;
  split_rec(cfg.bonds, params, choose, parts);
  ContourCollection out;
  out.kind = CollectionKind::m_partition;
  out.contours.reserve(parts.size());
  for (auto& p : parts) {
    SpinFlipConfig body;
    body.bonds = std::move(p);
    out.contours.push_back(build_contour_unchecked(body, params));
  }
  std::sort(out.contours.begin(), out.contours.end());
  return out;
}

}  // namespace

SpinFlipConfig ContourCollection::merged_body() const {
  std::vector<SpinFlipConfig> bodies;
  bodies.reserve(contours.size());
  for (const auto& g : contours) bodies.push_back(g.body);
  return merge_configs(bodies);
}

SiteSet ContourCollection::merged_interior() const {
  return minus_interior(merged_body());
}

Contour make_contour(const SpinFlipConfig& cfg, const ModelParams& params) {
  cfg.validate();
  if (cfg.empty()) throw std::invalid_argument("make_contour: empty configuration");
  if (detail::has_far_cut(cfg.bonds, params))
    throw std::invalid_argument("make_contour: configuration is not M-irreducible");
  return build_contour_unchecked(cfg, params);
}

double dist_dual(const SpinFlipConfig& a, const SpinFlipConfig& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("dist_dual: empty configuration");
  long long best = std::numeric_limits<long long>::max();
  for (int x : a.bonds) {
    auto it = std::lower_bound(b.bonds.begin(), b.bonds.end(), x);
    if (it != b.bonds.end()) best = std::min(best, static_cast<long long>(*it) - x);
    if (it != b.bonds.begin()) best = std::min(best, static_cast<long long>(x) - *(it - 1));
  }
  return static_cast<double>(best) / 2.0;
}

bool is_compatible(const Contour& g1, const Contour& g2, const ModelParams& params) {
  if (g1.body == g2.body) return false;
  std::vector<int> shared;
  std::set_intersection(g1.body.bonds.begin(), g1.body.bonds.end(),
                        g2.body.bonds.begin(), g2.body.bonds.end(),
                        std::back_inserter(shared));
  if (!shared.empty())
    throw std::invalid_argument("is_compatible: bodies overlap");
  return dist_dual(g1.body, g2.body) > pair_threshold(params, g1.diam, g2.diam);
}

bool is_positively_compatible(const Contour& g1, const Contour& g2,
                              const ModelParams& params) {
  if (!is_compatible(g1, g2, params)) return false;
  std::vector<int> shared;
  std::set_intersection(g1.interior.sites.begin(), g1.interior.sites.end(),
                        g2.interior.sites.begin(), g2.interior.sites.end(),
                        std::back_inserter(shared));
  return shared.empty();
}

bool interior_subset(const Contour& inner, const Contour& outer) {
  return std::includes(outer.interior.sites.begin(), outer.interior.sites.end(),
                       inner.interior.sites.begin(), inner.interior.sites.end());
}

ContourCollection m_partition(const SpinFlipConfig& cfg, const ModelParams& params) {
  return partition_with_chooser(cfg, params, [](std::size_t) { return std::size_t{0}; });
}

ContourCollection m_partition_shuffled(const SpinFlipConfig& cfg,
                                       const ModelParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return partition_with_chooser(cfg, params, [&rng](std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
  });
}

namespace detail {

bool has_far_cut(const std::vector<int>& bonds, const ModelParams& params) {
  return !far_cuts(bonds, params).empty();
}

}  // namespace detail

bool is_irreducible(const SpinFlipConfig& cfg, const ModelParams& params) {
  cfg.validate();
  const int n = cfg.flip_count();
  if (n == 0) throw std::invalid_argument("is_irreducible: empty configuration");
  if (n > 12) throw std::invalid_argument("is_irreducible: more than 12 flips refused");
  const auto& b = cfg.bonds;
  bool reducible = false;
  for_each_set_partition(n, [&](const std::vector<int>& part) {
    if (reducible) return;
    int blocks = 1 + *std::max_element(part.begin(), part.end());
    if (blocks < 2) return;
    std::vector<int> size(blocks, 0), lo(blocks, 0), hi(blocks, 0);
    for (int p = 0; p < n; ++p) {
      int blk = part[p];
      if (size[blk] == 0) lo[blk] = hi[blk] = b[p];
      lo[blk] = std::min(lo[blk], b[p]);
      hi[blk] = std::max(hi[blk], b[p]);
      ++size[blk];
    }
    for (int s : size)
      if (s % 2 != 0) return;  // parts must be spin-flip configurations
    // close pair of blocks?
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (part[p] == part[q]) continue;
        double d = (b[q] - b[p]) / 2.0;
        int da = (hi[part[p]] - lo[part[p]]) / 2;
        int db = (hi[part[q]] - lo[part[q]]) / 2;
        if (d <= pair_threshold(params, da, db)) return;  // close pair found
      }
    reducible = true;  // a partition with all parts far
  });
  return !reducible;
}

ContourCollection external_contours(const ContourCollection& gamma_set,
                                    const ModelParams& params) {
  if (gamma_set.kind == CollectionKind::unchecked)
    throw std::invalid_argument("external_contours: collection must be an M-partition");
  ContourCollection out;
  out.kind = CollectionKind::positive;
  for (const auto& g : gamma_set.contours) {
    bool external = true;
    for (const auto& other : gamma_set.contours) {
      if (other.body == g.body) continue;
      if (!interior_subset(other, g) && !is_positively_compatible(g, other, params)) {
        external = false;
        break;
      }
    }
    if (external) out.contours.push_back(g);
  }
  return out;
}

ContourCollection interior_collection(const Contour& gamma0,
                                      const ContourCollection& gamma_set,
                                      const ModelParams& params) {
  ContourCollection out;
  out.kind = CollectionKind::m_partition;
  for (const auto& g : gamma_set.contours) {
    if (g.body == gamma0.body) continue;
    if (is_compatible(g, gamma0, params) && interior_subset(g, gamma0))
      out.contours.push_back(g);
  }
  return out;
}

ContourCollection iota(const Contour& gamma0, const ContourCollection& gamma_set,
                       const ModelParams& params) {
  ContourCollection out = interior_collection(gamma0, gamma_set, params);
  out.contours.push_back(gamma0);
  std::sort(out.contours.begin(), out.contours.end());
  return out;
}

double energy_decomposition_residual(const ContourCollection& gamma_set,
                                     const ModelParams& params) {
  if (gamma_set.empty())
    throw std::invalid_argument("energy_decomposition_residual: empty collection");
  SiteSet total = gamma_set.merged_interior();
  double lhs = hamiltonian(total, params) + field_energy(total, params);

  ContourCollection ext = external_contours(gamma_set, params);
  std::vector<SiteSet> iota_interiors;
  iota_interiors.reserve(ext.contours.size());
  std::vector<double> terms;
  for (const auto& g : ext.contours) {
    ContourCollection ig = iota(g, gamma_set, params);
    SiteSet interior = ig.merged_interior();
    terms.push_back(hamiltonian(interior, params) + field_energy(interior, params));
    iota_interiors.push_back(std::move(interior));
  }
  for (std::size_t i = 0; i < iota_interiors.size(); ++i)
    for (std::size_t j = i + 1; j < iota_interiors.size(); ++j)
      terms.push_back(-phi(iota_interiors[i], iota_interiors[j], params));
  double rhs = pairwise_sum(terms);
  return std::abs(lhs - rhs);
}

namespace {

template <class Fn>
void scan_window_contours(const std::vector<int>& window, const ModelParams& params,
                          int max_diam, Fn&& fn) {
  // subsets of `window` that contain window[0]
  const int extra = static_cast<int>(window.size()) - 1;
  for (std::uint32_t mask = 0; mask < (1u << extra); ++mask) {
    SiteSet s;
    s.sites.push_back(window[0]);
    for (int b = 0; b < extra; ++b)
      if (mask & (1u << b)) s.sites.push_back(window[b + 1]);
    SpinFlipConfig cfg = boundary(s);
    if (cfg.diameter() > max_diam) continue;
    if (!detail::has_far_cut(cfg.bonds, params)) fn(cfg);
  }
}

}  // namespace

std::vector<Contour> enumerate_contours(const ModelParams& params, int max_diam) {
  params.validate();
  if (max_diam < 1 || max_diam > 22)
    throw std::invalid_argument("enumerate_contours: max_diam out of [1, 22]");
  std::vector<Contour> out;
  const auto& lam = params.lambda;
  for (std::size_t s = 0; s < lam.size(); ++s) {
    std::vector<int> window;
    for (std::size_t t = s; t < lam.size() && lam[t] <= lam[s] + max_diam - 1; ++t)
      window.push_back(lam[t]);
    scan_window_contours(window, params, max_diam, [&](const SpinFlipConfig& cfg) {
      out.push_back(build_contour_unchecked(cfg, params));
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Contour> enumerate_contour_classes(const ModelParams& params, int max_diam) {
  if (max_diam < 1 || max_diam > 22)
    throw std::invalid_argument("enumerate_contour_classes: max_diam out of [1, 22]");
  std::vector<int> window;
  for (int x = 0; x < max_diam; ++x) window.push_back(x);
  std::vector<Contour> out;
  scan_window_contours(window, params, max_diam, [&](const SpinFlipConfig& cfg) {
    out.push_back(build_contour_unchecked(cfg, params));
  });
  std::sort(out.begin(), out.end());
  return out;
}

int cover_size(const Contour& g) {
  int c = 0;
  while ((1 << c) < g.diam) ++c;
  return 1 + c;
}

HypothesisReport verify_hypotheses(const ModelParams& params, int max_diam,
                                   const std::vector<double>& beta_grid,
                                   int h1_window) {
  if (h1_window < 1 || h1_window > 16)
    throw std::invalid_argument("verify_hypotheses: h1_window out of [1, 16]");
  HypothesisReport rep;
  rep.m_param = params.m_param;
  rep.beta_grid = beta_grid;
  rep.max_diam = max_diam;
  rep.h1_window = h1_window;

  auto classes = enumerate_contour_classes(params, max_diam);

  // Energy floor and cover-size bounds over translation classes.
  double c0 = 0.0;
  std::map<int, double> origin_count_by_n;
  for (const auto& g : classes) {
    if (g.energy < 2.0)
      rep.violations.push_back(
          {"energy-floor", "H = " + std::to_string(g.energy) + " < 2"});
    int n = cover_size(g);
    if ((1 << (n - 1)) < g.diam)
      rep.violations.push_back({"cover-lower", "diam " + std::to_string(g.diam)});
    c0 = std::max(c0, n * std::log(2.0) / g.energy);
    origin_count_by_n[n] += g.interior.size();
  }
  rep.c0_fit = c0;
  double c1 = 0.0;
  for (const auto& [n, count] : origin_count_by_n)
    if (count > 0) c1 = std::max(c1, std::log2(count) / n);
  rep.c1_fit = c1;

  // Peierls sums over the beta grid, decreasing, with fitted decay constant.
  double c2 = std::numeric_limits<double>::infinity();
  double prev = std::numeric_limits<double>::infinity();
  for (double beta : beta_grid) {
    KahanSum sum;
    for (const auto& g : classes)
      sum.add(g.interior.size() * std::exp(-beta * g.energy));
    double value = sum.value();
    rep.peierls_sums[beta] = value;
    if (value >= prev)
      rep.violations.push_back({"peierls-monotone",
                                "sum not decreasing at beta = " + std::to_string(beta)});
    prev = value;
    if (value >= 1.0)
      rep.violations.push_back({"peierls-decay",
                                "sum >= 1 at beta = " + std::to_string(beta)});
    else if (beta > 0)
      c2 = std::min(c2, -std::log(value) / beta);
  }
  rep.c2_fit = std::isfinite(c2) ? c2 : 0.0;

  // Energy sandwich over every M-partition supported on the window.
  std::vector<int> window;
  for (int x = 0; x < h1_window; ++x) window.push_back(x);
  for (std::uint32_t mask = 1; mask < (1u << h1_window); ++mask) {
    SiteSet s;
    for (int b = 0; b < h1_window; ++b)
      if (mask & (1u << b)) s.sites.push_back(window[b]);
    SpinFlipConfig cfg = boundary(s);
    ContourCollection gamma = m_partition(cfg, params);
    double h_total = hamiltonian(s, params);
    ContourCollection ext = external_contours(gamma, params);
    for (const auto& g : ext.contours) {
      std::vector<SpinFlipConfig> rest;
      for (const auto& other : gamma.contours)
        if (!(other.body == g.body)) rest.push_back(other.body);
      double h_rest = 0.0;
      if (!rest.empty()) h_rest = hamiltonian(merge_configs(rest), params);
      double tol = 1e-9 * (1.0 + std::abs(h_total));
      if (h_rest + 0.875 * g.energy > h_total + tol)
        rep.violations.push_back(
            {"energy-sandwich-lower",
             "mask " + std::to_string(mask) + ": " + std::to_string(h_rest) + " + 7/8*" +
                 std::to_string(g.energy) + " > " + std::to_string(h_total)});
      if (h_total > h_rest + g.energy + tol)
        rep.violations.push_back(
            {"energy-sandwich-upper", "mask " + std::to_string(mask)});
    }
  }
  return rep;
}

}  // namespace polygas
