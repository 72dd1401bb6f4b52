#pragma once

// Definitions of the scalar-generic kernels declared in engine.hpp.
// Included by the double-precision translation units and by the
// high-precision diagnostics header.

#include <algorithm>

#include "polygas/cluster.hpp"
#include "polygas/detail/engine.hpp"
#include "polygas/oracle.hpp"
#include "polygas/polymer.hpp"

namespace polygas::detail {

template <class Real>
Real big_z_t(const PolymerTermData& data, const EnergyContext<Real>& ctx) {
  using std::exp;
  const int k = data.n_contours;
  Real total = 0;
  for (const auto& term : data.big_z_terms) {
    Real exponent = 0;  // products of exponentials accumulated in log space
    for (const auto& sites : term) exponent -= ctx.beta * ctx.energy(sites);
    Real weight = exp(exponent);
    Real gsum;
    if (k == 1) {
      gsum = Real(1);
    } else {
      std::function<Real(int, int)> w = [&](int i, int j) {
        return expm1_r(ctx.beta * phi_t<Real>(term[i], term[j], ctx.alpha));
      };
      gsum = connected_graph_sum_t<Real>(k, w);
    }
    total += weight * gsum;
  }
  return total;
}

template <class Real>
Real big_z_star_t(const PolymerTermData& data, const EnergyContext<Real>& ctx) {
  using std::exp;
  Real product = 1;
  for (const auto& supports : data.star_supports) {
    Real factor = 1;  // the empty decoration
    for (const auto& sites : supports) factor += exp(-ctx.beta * ctx.energy(sites));
    product *= factor;
  }
  return product;
}

/// Exact log Z by direct summation over the 2^|lambda| configurations.
template <class Real>
Real exact_log_z_t(const ModelParams& params, const EnergyContext<Real>& ctx) {
  using std::exp;
  const int n = static_cast<int>(params.lambda.size());
  if (n > 16) throw std::invalid_argument("exact_log_z_t: |lambda| > 16 refused");
  Real w = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> sites;
    for (int b = 0; b < n; ++b)
      if (mask & (1u << b)) sites.push_back(params.lambda[b]);
    w += exp(-ctx.beta * ctx.energy(sites));
  }
  return log1p_r(w);
}

template <class Real>
SeriesOut<Real> truncated_log_z_t(const ModelParams& params, int order, int diam_cap,
                                  Real alpha, Real beta, Real zeta_alpha) {
  params.validate();
  if (params.lambda.size() > 6)
    throw std::invalid_argument("truncated_log_z: |lambda| > 6 refused");
  if (order < 1 || order > 4)
    throw std::invalid_argument("truncated_log_z: order out of [1, 4]");

  EnergyContext<Real> ctx{alpha, beta, zeta_alpha,
                          params.has_field() ? &params.field : nullptr};

  std::vector<Polymer> universe = enumerate_polymers(params, diam_cap);
  const int u = static_cast<int>(universe.size());
  std::vector<Real> act(u);
  for (int i = 0; i < u; ++i) {
    PolymerTermData data = collect_polymer_terms(universe[i], params);
    act[i] = activity_t<Real>(data, ctx);
  }
  // pairwise polymer compatibility; a polymer is incompatible with itself
  std::vector<std::vector<bool>> compat(u, std::vector<bool>(u, false));
  for (int i = 0; i < u; ++i)
    for (int j = i + 1; j < u; ++j)
      compat[i][j] = compat[j][i] = polymer_compatible(universe[i], universe[j], params);

  SeriesOut<Real> out;
  out.polymer_count = u;
  out.terms.assign(order, Real(0));

  // multisets i_1 <= ... <= i_n with multiplicity weight 1 / prod(mult!)
  std::vector<int> tuple;
  std::function<void(int, int)> rec = [&](int start, int n_left) {
    if (n_left == 0) {
      const int n = static_cast<int>(tuple.size());
      std::function<double(int, int)> edge = [&](int a, int b) {
        return compat[tuple[a]][tuple[b]] ? 0.0 : -1.0;
      };
      double phi_n = connected_graph_sum_t<double>(n, edge);  // integer-valued
      if (phi_n == 0.0) return;
      long long mult_fact = 1;
      int run = 1;
      for (int i = 1; i < n; ++i) {
        if (tuple[i] == tuple[i - 1])
          mult_fact *= ++run;
        else
          run = 1;
      }
      Real contrib = Real(phi_n) / Real(static_cast<double>(mult_fact));
      for (int i : tuple) contrib *= act[i];
      out.terms[n - 1] += contrib;
      return;
    }
    for (int i = start; i < u; ++i) {
      tuple.push_back(i);
      rec(i, n_left - 1);
      tuple.pop_back();
    }
  };
  for (int n = 1; n <= order; ++n) {
    tuple.clear();
    rec(0, n);
  }

  out.partials.resize(order);
  Real acc = 0;
  for (int n = 0; n < order; ++n) {
    acc += out.terms[n];
    out.partials[n] = acc;
  }
  out.log_z = exact_log_z_t<Real>(params, ctx);
  return out;
}

}  // namespace polygas::detail
