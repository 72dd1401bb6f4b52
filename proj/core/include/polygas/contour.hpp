#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "polygas/config.hpp"
#include "polygas/params.hpp"

namespace polygas {

/// An M-irreducible spin-flip set together with cached geometry and energy.
struct Contour {
  SpinFlipConfig body;
  SiteSet interior;   ///< cached I_-
  int diam = 0;       ///< diameter of body over the dual lattice, >= 1
  double energy = 0;  ///< cached H at the params used to build the contour

  auto operator<=>(const Contour& o) const { return body <=> o.body; }
  bool operator==(const Contour& o) const { return body == o.body; }
};

enum class CollectionKind { m_partition, positive, unchecked };

/// A finite set of contours. kind records which pairwise relation has been
/// established: m_partition means pairwise compatible, positive means
/// pairwise positively compatible.
struct ContourCollection {
  std::vector<Contour> contours;  ///< canonically sorted
  CollectionKind kind = CollectionKind::unchecked;

  bool empty() const { return contours.empty(); }
  int size() const { return static_cast<int>(contours.size()); }
  SpinFlipConfig merged_body() const;
  SiteSet merged_interior() const;
};

/// Builds a contour from a flip set, caching interior, diameter and energy.
/// Checks M-irreducibility (cheap structural test) and throws if it fails.
Contour make_contour(const SpinFlipConfig& cfg, const ModelParams& params);

/// Minimum over bond pairs of the dual-lattice distance, in lattice units.
/// Throws on empty input.
double dist_dual(const SpinFlipConfig& a, const SpinFlipConfig& b);

/// Compatibility: dist(g1, g2) > M * min(diam)^a. A contour is never
/// compatible with itself. Throws if distinct bodies share a bond.
bool is_compatible(const Contour& g1, const Contour& g2, const ModelParams& params);

/// Compatible and with disjoint minus-interiors.
bool is_positively_compatible(const Contour& g1, const Contour& g2,
                              const ModelParams& params);

/// Inclusion of minus-interiors: I_-(inner) subset of I_-(outer).
bool interior_subset(const Contour& inner, const Contour& outer);

/// The unique M-partition of a nonempty configuration: pairwise compatible,
/// M-irreducible parts. Computed by recursive far-cut splitting (see
/// is_irreducible for the underlying criterion); deterministic.
ContourCollection m_partition(const SpinFlipConfig& cfg, const ModelParams& params);

/// Same partition computed with the candidate far cuts tried in an order
/// scrambled by `seed`; used to test order-independence of the result.
ContourCollection m_partition_shuffled(const SpinFlipConfig& cfg,
                                       const ModelParams& params, std::uint64_t seed);

/// Definitional irreducibility check: enumerates every nontrivial partition
/// of cfg into even-cardinality parts and requires each to contain two parts
/// at distance <= M * min(diam)^a. Exhaustive; refuses more than 12 flips.
bool is_irreducible(const SpinFlipConfig& cfg, const ModelParams& params);

namespace detail {
/// Fast equivalent criterion: a configuration is reducible iff some
/// contiguous even range of its sorted bonds is far from the complement.
/// (Any all-far partition is laminar, and its minimal-diameter part yields
/// such a far bipartition.)
bool has_far_cut(const std::vector<int>& bonds, const ModelParams& params);
}  // namespace detail

/// External contours of an M-partition: contours g such that every other
/// contour is either nested inside g or positively compatible with g.
/// The result is a positive collection; it equals the input iff the input
/// is positive.
ContourCollection external_contours(const ContourCollection& gamma_set,
                                    const ModelParams& params);

/// Contours of gamma_set internal to gamma0 (compatible with it and with
/// nested interior). gamma0 need not belong to gamma_set.
ContourCollection interior_collection(const Contour& gamma0,
                                      const ContourCollection& gamma_set,
                                      const ModelParams& params);

/// interior_collection plus gamma0 itself.
ContourCollection iota(const Contour& gamma0, const ContourCollection& gamma_set,
                       const ModelParams& params);

/// Absolute residual of the energy decomposition over external contours:
///   | H_h(Gamma) - [ sum_{g in ext} H_h(iota_g) - 1/2 sum_{g != g'} Phi(...) ] |.
/// Exact identity, so the residual is pure rounding.
double energy_decomposition_residual(const ContourCollection& gamma_set,
                                     const ModelParams& params);

/// All M-irreducible configurations with I_- inside params.lambda and
/// diameter <= max_diam, each exactly once, canonically sorted.
/// Refuses max_diam > 22.
std::vector<Contour> enumerate_contours(const ModelParams& params, int max_diam);

/// Translation classes: every contour with min(I_-) = 0 and diameter
/// <= max_diam (one representative per class, canonically sorted).
std::vector<Contour> enumerate_contour_classes(const ModelParams& params, int max_diam);

/// Translation-invariant cover-size surrogate N = 1 + ceil(log2 diam).
int cover_size(const Contour& g);

struct HypothesisViolation {
  std::string check;
  std::string detail;
};

/// Numerical verification record for the three structural estimates behind
/// the expansion: the energy sandwich, the cover-size/entropy bounds and the
/// decay of Peierls sums in beta.
struct HypothesisReport {
  double m_param = 0;
  double c0_fit = 0;  ///< smallest c0 with N(g) <= c0 H(g) / log 2
  double c1_fit = 0;  ///< smallest c1 with |{g : 0 in I_-, N(g)=n}| <= 2^(c1 n)
  double c2_fit = 0;  ///< largest c2 with peierls_sum(beta) <= e^(-c2 beta)
  std::vector<double> beta_grid;
  std::map<double, double> peierls_sums;
  int max_diam = 0;
  int h1_window = 0;  ///< window size of the energy-sandwich sweep
  std::vector<HypothesisViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Sweeps the three estimates over all contours with diameter <= max_diam
/// and all M-partitions supported on a window of h1_window sites.
/// Violations are data, not errors.
HypothesisReport verify_hypotheses(const ModelParams& params, int max_diam,
                                   const std::vector<double>& beta_grid,
                                   int h1_window = 12);

}  // namespace polygas
