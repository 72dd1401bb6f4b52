#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "polygas/params.hpp"

namespace polygas {

/// Finite set of dual-lattice bonds (elements of Z + 1/2) where a
/// plus-boundary configuration changes sign. Bonds are stored as odd
/// integers: the dual site x + 1/2 is stored as 2x + 1, which keeps all
/// bond arithmetic exact. Distances and diameters reported by the API are
/// in lattice units (differences of stored values are even, so they halve
/// exactly).
struct SpinFlipConfig {
  std::vector<int> bonds;  ///< strictly increasing odd integers, even count

  bool empty() const { return bonds.empty(); }
  int flip_count() const { return static_cast<int>(bonds.size()); }

  /// Diameter over the dual lattice, in lattice units. Zero when empty.
  int diameter() const {
    return bonds.empty() ? 0 : (bonds.back() - bonds.front()) / 2;
  }

  /// Throws std::invalid_argument unless sorted, odd-valued and of even size.
  void validate() const;

  /// Builds from half-integer dual positions, e.g. {-0.5, 0.5}.
  static SpinFlipConfig from_half_integers(const std::vector<double>& positions);
  std::vector<double> to_half_integers() const;

  auto operator<=>(const SpinFlipConfig&) const = default;
};

/// Sorted, duplicate-free finite subset of Z.
struct SiteSet {
  std::vector<int> sites;

  bool empty() const { return sites.empty(); }
  int size() const { return static_cast<int>(sites.size()); }
  bool contains(int x) const;
  void validate() const;

  auto operator<=>(const SiteSet&) const = default;
};

/// Bonds of sigma, where sigma is -1 exactly on minus_sites and +1 elsewhere.
SpinFlipConfig boundary(const SiteSet& minus_sites);

/// Bonds of the configuration given as explicit spins on its domain
/// (+1 outside). Values must be +1 or -1.
SpinFlipConfig boundary(const std::map<int, int>& sigma);

/// Sites where the reconstructed configuration equals -1; inverse of
/// boundary().
SiteSet minus_interior(const SpinFlipConfig& cfg);

/// Disjoint union of flip sets. Throws if any bond repeats.
SpinFlipConfig merge_configs(const std::vector<SpinFlipConfig>& parts);

/// Geometric energy H = sum_{x in I_-, y notin I_-} 2|x-y|^-alpha computed
/// exactly through the zeta rearrangement
///   H = sum_{x in I_-} [ 4 zeta(alpha) - sum_{y in I_-, y != x} 2|x-y|^-alpha ],
/// which resolves the infinite plus-boundary tail in closed form.
double hamiltonian(const SpinFlipConfig& cfg, const ModelParams& params);
double hamiltonian(const SiteSet& minus_sites, const ModelParams& params);

/// Interaction sum Phi(A,B) = sum_{x in A, y in B} 4|x-y|^-alpha for
/// disjoint nonempty site sets. Throws on empty or overlapping input.
double phi(const SiteSet& a, const SiteSet& b, const ModelParams& params);

/// External-field energy E_h = sum_{x in I_-} 2 h_x.
double field_energy(const SpinFlipConfig& cfg, const ModelParams& params);
double field_energy(const SiteSet& minus_sites, const ModelParams& params);
/// Same with |h|, the bound used by the upper activity.
double field_energy_abs(const SiteSet& minus_sites, const ModelParams& params);

/// H + E_h.
double total_energy(const SpinFlipConfig& cfg, const ModelParams& params);

namespace detail {

/// Scalar-generic kernels shared between the double API and the
/// high-precision series engine.

template <class Real>
Real pair_coupling(int x, int y, Real alpha) {
  using std::pow;
  int d = x > y ? x - y : y - x;
  return pow(Real(d), -alpha);
}

template <class Real>
Real hamiltonian_t(const std::vector<int>& minus_sites, Real alpha, Real zeta_alpha) {
  const Real four_zeta = 4 * zeta_alpha;
  Real total = 0;
  for (std::size_t i = 0; i < minus_sites.size(); ++i) {
    Real inner = 0;
    for (std::size_t j = 0; j < minus_sites.size(); ++j) {
      if (i == j) continue;
      inner += 2 * pair_coupling(minus_sites[i], minus_sites[j], alpha);
    }
    total += four_zeta - inner;
  }
  return total;
}

template <class Real>
Real phi_t(const std::vector<int>& a, const std::vector<int>& b, Real alpha) {
  Real total = 0;
  for (int x : a)
    for (int y : b) total += 4 * pair_coupling(x, y, alpha);
  return total;
}

}  // namespace detail

}  // namespace polygas
