#include "polygas/sitebounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polygas/trees.hpp"
#include "polygas/util.hpp"
#include "polygas/zeta.hpp"

namespace polygas {

double site_kernel(long long x, long long y, double alpha) {
  if (x == y) return 1.0;
  return std::pow(static_cast<double>(x > y ? x - y : y - x), -alpha);
}

namespace {

double permutation_chain_sum(const std::vector<long long>& xs, long long y, double alpha,
                             bool include_endpoint) {
  const int k = static_cast<int>(xs.size());
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  KahanSum sum;
  do {
    double prod = include_endpoint ? site_kernel(xs[perm[k - 1]], y, alpha) : 1.0;
    for (int i = 0; i + 1 < k; ++i)
      prod *= site_kernel(xs[perm[i]], xs[perm[i + 1]], alpha);
    sum.add(prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum.value();
}

}  // namespace

BoundPair chain_bound_check(const std::vector<long long>& xs, long long y, double alpha) {
  const int k = static_cast<int>(xs.size());
  if (k < 2 || k > 5) throw std::invalid_argument("chain_bound_check: k out of [2, 5]");
  BoundPair out;
  out.lhs = 1.0;
  for (long long x : xs) out.lhs *= site_kernel(x, y, alpha);
  out.rhs = std::pow(4.0, alpha * k) * permutation_chain_sum(xs, y, alpha, true);
  return out;
}

BoundPair summed_chain_bound_check(const std::vector<long long>& xs, double alpha) {
  const int k = static_cast<int>(xs.size());
  if (k < 2 || k > 4) throw std::invalid_argument("summed_chain_bound_check: k out of [2, 4]");
  const double ka = k * alpha;  // > 2, so the y-sum converges

  // truncation radius with certified tail: beyond [min - R, max + R] each
  // factor is at most d^-alpha with d the offset past the extremes, so the
  // two tails together are below 2 [ R^-ka + R^(1-ka)/(ka-1) ]
  long long radius = 16;
  auto tail_bound = [&](long long r) {
    return 2.0 * (std::pow(static_cast<double>(r), -ka) +
                  std::pow(static_cast<double>(r), 1.0 - ka) / (ka - 1.0));
  };
  while (tail_bound(radius) >= 1e-12 && radius < (1ll << 40)) radius *= 2;

  long long lo = *std::min_element(xs.begin(), xs.end()) - radius;
  long long hi = *std::max_element(xs.begin(), xs.end()) + radius;
  KahanSum lhs;
  for (long long y = lo; y <= hi; ++y) {
    double prod = 1.0;
    for (long long x : xs) {
      prod *= site_kernel(x, y, alpha);
      if (prod == 0.0) break;
    }
    lhs.add(prod);
  }
  BoundPair out;
  out.lhs = lhs.value() + tail_bound(radius);  // certified upper evaluation
  out.rhs = std::pow(4.0, alpha * k) * (1.0 + 2.0 * riemann_zeta(alpha)) *
            permutation_chain_sum(xs, 0, alpha, false);
  return out;
}

bool detector_set_member(const Contour& g1, const Contour& g2, const ModelParams& params) {
  if (g1.body == g2.body)
    throw std::invalid_argument("detector_set_member: contours must be distinct");
  // distance between minus-interiors
  long long best = std::numeric_limits<long long>::max();
  for (int x : g1.interior.sites) {
    auto it = std::lower_bound(g2.interior.sites.begin(), g2.interior.sites.end(), x);
    if (it != g2.interior.sites.end())
      best = std::min(best, static_cast<long long>(*it) - x);
    if (it != g2.interior.sites.begin())
      best = std::min(best, static_cast<long long>(x) - *(it - 1));
  }
  double threshold = 2.0 * params.m_param *
                     std::pow(static_cast<double>(std::min(g1.diam, g2.diam)),
                              params.dist_exponent);
  return static_cast<double>(best) <= threshold;
}

std::vector<BoundPair> contour_point_bounds_check(const Contour& g1,
                                                  const std::optional<Contour>& g2,
                                                  int x, int y,
                                                  const ModelParams& params, double c0) {
  std::vector<BoundPair> out;
  const double a = params.alpha;
  if (!g2) {
    if (!g1.interior.contains(x) || !g1.interior.contains(y))
      throw std::invalid_argument("contour_point_bounds_check: sites outside interior");
    out.push_back({1.0, std::exp(a * c0 * g1.energy) * site_kernel(x, y, a)});
    return out;
  }
  if (!g1.interior.contains(x) || !g2->interior.contains(y))
    throw std::invalid_argument("contour_point_bounds_check: site membership violated");
  bool pos = is_positively_compatible(g1, *g2, params);
  bool detected = detector_set_member(g1, *g2, params);
  if (pos)
    out.push_back({phi(g1.interior, g2->interior, params),
                   std::pow(4.0, a) *
                       std::exp(2.0 * a * c0 * (g1.energy + g2->energy)) *
                       site_kernel(x, y, a)});
  if (detected)
    out.push_back({1.0, std::pow(4.0 * params.m_param, a) *
                            std::exp(a * c0 * (g1.energy + g2->energy)) *
                            site_kernel(x, y, a)});
  if (out.empty())
    throw std::invalid_argument(
        "contour_point_bounds_check: pair neither positively compatible nor detected");
  return out;
}

double site_tree_sum(const SiteSet& a_set, double alpha) {
  a_set.validate();
  const int k = a_set.size();
  if (k < 1 || k > 7) throw std::invalid_argument("site_tree_sum: |A| out of [1, 7]");
  KahanSum sum;
  for_each_labeled_tree(k, [&](const LabeledTree& t) {
    double prod = 1.0;
    for (auto [p, q] : t.edges)
      prod *= site_kernel(a_set.sites[p], a_set.sites[q], alpha);
    sum.add(prod);
  });
  return sum.value();
}

CorrelationBoundReport correlation_bound_report(const ModelParams& params,
                                                const SiteSet& a_set,
                                                const std::vector<double>& beta_grid) {
  a_set.validate();
  if (a_set.size() < 2)
    throw std::invalid_argument("correlation_bound_report: |A| must be >= 2");
  CorrelationBoundReport rep;
  rep.a_set = a_set;
  rep.betas = beta_grid;
  rep.shape = a_set.size() == 2
                  ? site_kernel(a_set.sites[0], a_set.sites[1], params.alpha)
                  : site_tree_sum(a_set, params.alpha);
  for (double beta : beta_grid) {
    ModelParams p = params.with_beta(beta);
    double w = a_set.size() == 2
                   ? truncated_two_point(p, a_set.sites[0], a_set.sites[1])
                   : wick_product(p, a_set);
    rep.wick_values.push_back(std::abs(w));
    rep.ratios.push_back(std::abs(w) / rep.shape);
  }
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.betas.size(); ++i) {
    if (rep.ratios[i] <= 0.0 || rep.betas[i] <= 0.0) continue;
    c = std::min(c, -std::log(rep.ratios[i] / 2.0) / rep.betas[i]);
  }
  rep.c_fit = c;
  rep.ratios_decreasing = true;
  for (std::size_t i = 0; i + 1 < rep.ratios.size(); ++i) {
    bool both_tiny = rep.ratios[i] < 1e-300 && rep.ratios[i + 1] < 1e-300;
    if (!(rep.ratios[i + 1] < rep.ratios[i] || both_tiny)) rep.ratios_decreasing = false;
  }
  return rep;
}

}  // namespace polygas
