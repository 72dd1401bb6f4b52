#pragma once

#include <map>
#include <vector>

#include "polygas/contour.hpp"

namespace polygas {

/// A positive collection of contours.
struct Polymer {
  ContourCollection contours;  ///< kind == positive, canonically sorted

  bool empty() const { return contours.empty(); }
  int size() const { return contours.size(); }
  /// Canonical key (concatenated bodies with separators) for set semantics.
  std::vector<int> key() const;
};

struct PolymerSet {
  std::vector<Polymer> polymers;
  bool compatible = false;  ///< pairwise polymer compatibility established
};

/// Activity z+ = Z(Gamma) / Z*(Gamma).
struct Activity {
  double value = 0;
  double numerator = 0;    ///< Z(Gamma)
  double denominator = 1;  ///< Z*(Gamma), always >= 1
};

/// Polymer compatibility: all cross pairs of contours compatible, and
/// exactly one of (i) elementwise positive compatibility, (ii) p2 internal
/// to a single contour of p1, (iii) p1 internal to a single contour of p2.
/// A polymer is never compatible with itself.
bool polymer_compatible(const Polymer& p1, const Polymer& p2, const ModelParams& params);

/// Nesting parent of each contour inside an M-partition: parent[i] is the
/// index of the inclusion-minimal contour whose interior strictly contains
/// contour i's interior, or -1 for external contours.
std::vector<int> nesting_parents(const ContourCollection& gamma_set,
                                 const ModelParams& params);

/// The coarsest decomposition of an M-partition into compatible polymers:
/// external contours fuse into one polymer and same-parent contours fuse
/// blockwise.
PolymerSet coarsest_decomposition(const ContourCollection& gamma_set,
                                  const ModelParams& params);

/// Every collection of compatible polymers supported in params.lambda
/// (including the empty one), realized as all refinements of the coarsest
/// decomposition of each M-partition. Refuses |lambda| > 8.
std::vector<PolymerSet> enumerate_compatible_polymer_sets(const ModelParams& params);

/// All polymers (positive M-partitions) supported in params.lambda, with an
/// optional contour-diameter cap (< 0 means no cap). Canonical order.
std::vector<Polymer> enumerate_polymers(const ModelParams& params, int max_diam = -1);

/// Z(Gamma): sum over connected graphs on Gamma and all decorated
/// M-partitions with external set Gamma.
double big_z(const Polymer& p, const ModelParams& params);

/// Z*(Gamma) = prod_gamma [ 1 + sum over internal decorations ]; each factor
/// is >= 1.
double big_z_star(const Polymer& p, const ModelParams& params);

Activity activity(const Polymer& p, const ModelParams& params);

/// Tree-sum upper bound zbar = prod e^(-beta H/2) * sum_{T} prod Phi(e),
/// times e^(beta E_|h|) when a field is present. Dominates the activity for
/// beta >= 8 log 2.
double upper_activity(const Polymer& p, const ModelParams& params);

/// Exact polymer-gas representation: sum over compatible polymer sets of the
/// product of activities. Equals the configuration-sum partition function.
/// Refuses |lambda| > 8.
double polymer_partition_function(const ModelParams& params);

/// Residual of the cluster factorization identity
///   prod_e (1 + x_e) = sum_{partitions P} prod_{Q in P} [connected sum on Q]
/// for a symmetric pair-weight function on an n-element set, n <= 7.
double mayer_expand_residual(int n, const std::function<double(int, int)>& weight);

namespace detail {

/// Combinatorial skeleton of an activity computation, independent of the
/// numeric scalar: interiors of decorated collections, enumerated once and
/// reused by the double and high-precision evaluations.
struct PolymerTermData {
  int n_contours = 0;
  /// Per admissible decorated partition: for each polymer contour, the
  /// minus-interior sites of the contour together with its internal
  /// decorations.
  std::vector<std::vector<std::vector<int>>> big_z_terms;
  /// Per contour: the site supports of its admissible internal decorations.
  std::vector<std::vector<std::vector<int>>> star_supports;
};

PolymerTermData collect_polymer_terms(const Polymer& p, const ModelParams& params);

}  // namespace detail

}  // namespace polygas
