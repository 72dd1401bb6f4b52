#pragma once

#include <optional>
#include <vector>

#include "polygas/contour.hpp"
#include "polygas/oracle.hpp"

namespace polygas {

/// Site kernel C(x,y): 1 on the diagonal, |x-y|^-alpha off it.
double site_kernel(long long x, long long y, double alpha);

struct BoundPair {
  double lhs = 0;
  double rhs = 0;
  bool holds() const { return lhs <= rhs; }
};

/// Chain bound: prod_i C(x_i, y) against
/// 4^(alpha k) sum_{permutations} C(x_phi(k), y) prod C(x_phi(i), x_phi(i+1)).
/// 2 <= k <= 5.
BoundPair chain_bound_check(const std::vector<long long>& xs, long long y, double alpha);

/// Summed version: sum_y prod_i C(x_i, y) (truncated with a certified tail,
/// included in lhs) against 4^(alpha k)(1 + 2 zeta(alpha)) times the
/// permutation sum. 2 <= k <= 4.
BoundPair summed_chain_bound_check(const std::vector<long long>& xs, double alpha);

/// Incompatibility detector: interiors within 2M min(diam)^a of each other.
/// Any incompatible polymer pair contains such a contour pair.
bool detector_set_member(const Contour& g1, const Contour& g2, const ModelParams& params);

/// Contour-to-site estimates with a fitted constant c0:
///   single contour, x,y in I_-:            1 <= e^(alpha c0 H) C(x,y)
///   positively compatible pair, x in I_1,
///   y in I_2:                 Phi(g1,g2) <= 4^alpha e^(2 alpha c0 [H1+H2]) C(x,y)
///   detector pair, same memberships:  1 <= (4M)^alpha e^(alpha c0 [H1+H2]) C(x,y)
/// Returns the pairs for every case whose precondition the inputs satisfy;
/// throws if none applies.
std::vector<BoundPair> contour_point_bounds_check(const Contour& g1,
                                                  const std::optional<Contour>& g2,
                                                  int x, int y,
                                                  const ModelParams& params, double c0);

/// Sum over labeled trees on A of prod_{edges} |a1-a2|^-alpha. |A| <= 7.
double site_tree_sum(const SiteSet& a_set, double alpha);

/// Decay-shape report for a site set: oracle |<:sigma_A:>| against the
/// structural envelope (the site kernel for |A| = 2, the tree sum over sites
/// otherwise) across a beta grid, with the decay constant fitted so that
/// |wick| <= 2 e^(-c beta) * shape holds on the whole grid.
struct CorrelationBoundReport {
  SiteSet a_set;
  std::vector<double> betas;
  std::vector<double> wick_values;  ///< |<:sigma_A:>| per beta
  double shape = 0;                 ///< structural envelope, beta-independent
  std::vector<double> ratios;       ///< |wick| / shape
  double c_fit = 0;                 ///< min over the grid of -log(ratio/2)/beta
  bool ratios_decreasing = false;
};

CorrelationBoundReport correlation_bound_report(const ModelParams& params,
                                                const SiteSet& a_set,
                                                const std::vector<double>& beta_grid);

}  // namespace polygas
