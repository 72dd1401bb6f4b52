#pragma once

// Scalar-generic evaluation kernels behind the polymer-gas machinery. The
// production API instantiates them with double; the high-precision series
// diagnostics instantiate them with a multiprecision real. Combinatorial
// structure (partitions, decorations, compatibility) is computed once in
// exact integer arithmetic and shared by both instantiations.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "polygas/config.hpp"
#include "polygas/params.hpp"

namespace polygas {

struct Polymer;

namespace detail {

struct PolymerTermData;

inline double expm1_r(double x) { return std::expm1(x); }
template <class Real>
Real expm1_r(const Real& x) {
  using std::exp;
  return exp(x) - Real(1);
}

inline double log1p_r(double x) { return std::log1p(x); }
template <class Real>
Real log1p_r(const Real& x) {
  using std::log;
  return log(Real(1) + x);
}

/// Connected part of prod_{i<j in S} (1 + w_ij): rooted subset convolution,
///   A(S) = sum_{T containing min S} C(T) A(S \ T),
/// where A(S) is the unrestricted product over pairs inside S.
template <class Real>
Real connected_graph_sum_t(int n, const std::function<Real(int, int)>& weight) {
  if (n < 1) throw std::invalid_argument("connected_graph_sum: empty vertex set");
  if (n > 16) throw std::invalid_argument("connected_graph_sum: n > 16 refused");
  const std::uint32_t full = (n == 32 ? ~0u : (1u << n) - 1);
  std::vector<Real> all(full + 1), conn(full + 1);
  all[0] = Real(1);
  for (std::uint32_t s = 1; s <= full; ++s) {
    int hi = 31 - __builtin_clz(s);
    std::uint32_t rest = s & ~(1u << hi);
    Real prod = all[rest];
    for (int j = 0; j < hi; ++j)
      if (rest & (1u << j)) prod *= Real(1) + weight(j, hi);
    all[s] = prod;
  }
  for (std::uint32_t s = 1; s <= full; ++s) {
    int low = __builtin_ctz(s);
    Real c = all[s];
    std::uint32_t rest = s & ~(1u << low);
    // proper subsets of s that contain the lowest vertex
    for (std::uint32_t sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
      std::uint32_t t = sub | (1u << low);
      c -= conn[t] * all[s & ~t];
      if (sub == 0) break;
    }
    conn[s] = c;
  }
  return conn[full];
}

/// Energy evaluation context: fixed alpha, beta, zeta(alpha) and field.
template <class Real>
struct EnergyContext {
  Real alpha;
  Real beta;
  Real zeta_alpha;
  const std::map<int, double>* field = nullptr;

  Real energy(const std::vector<int>& sites) const {
    Real h = hamiltonian_t<Real>(sites, alpha, zeta_alpha);
    if (field && !field->empty()) {
      for (int x : sites) {
        auto it = field->find(x);
        if (it != field->end()) h += 2 * Real(it->second);
      }
    }
    return h;
  }
};

template <class Real>
Real big_z_t(const PolymerTermData& data, const EnergyContext<Real>& ctx);

template <class Real>
Real big_z_star_t(const PolymerTermData& data, const EnergyContext<Real>& ctx);

template <class Real>
Real activity_t(const PolymerTermData& data, const EnergyContext<Real>& ctx) {
  return big_z_t(data, ctx) / big_z_star_t(data, ctx);
}

template <class Real>
struct SeriesOut {
  std::vector<Real> terms;
  std::vector<Real> partials;
  Real log_z{};
  int polymer_count = 0;
};

/// Truncated cluster series and the exact log Z of the same volume,
/// evaluated in the given scalar type.
template <class Real>
SeriesOut<Real> truncated_log_z_t(const ModelParams& params, int order, int diam_cap,
                                  Real alpha, Real beta, Real zeta_alpha);

}  // namespace detail
}  // namespace polygas
