#pragma once

// High-precision instantiation of the series engine. The convergent cluster
// series at low temperature has partial-sum errors far below double rounding
// of log Z (the terms shrink like powers of e^(-beta H)), so the convergence
// diagnostics |partial_sum(n) - log Z| are evaluated with a 120-digit MPFR
// scalar. Combinatorics are shared with the double path; only the scalar
// changes.

#include <boost/multiprecision/mpfr.hpp>

#include "polygas/detail/engine_impl.hpp"

namespace polygas {

using BigReal =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<120>>;

/// Riemann zeta by Borwein's alternating-series algorithm; the truncation
/// error after n terms is below 3 (3 + sqrt 8)^-n / |1 - 2^(1-s)|, so n = 200
/// leaves the result exact at this precision.
inline BigReal riemann_zeta_big(const BigReal& s) {
  if (!(s > 1)) throw std::invalid_argument("riemann_zeta_big: requires s > 1");
  const int n = 200;
  std::vector<BigReal> d(n + 1);
  BigReal term = 1;  // n (n + j - 1)! 4^j / ((n - j)! (2j)!), starting at j = 0
  BigReal acc = term;
  d[0] = acc;
  for (int j = 1; j <= n; ++j) {
    term *= BigReal(4) * (n + j - 1) * (n - j + 1) / (BigReal(2 * j) * (2 * j - 1));
    acc += term;
    d[j] = acc;
  }
  BigReal sum = 0;
  for (int k = 0; k < n; ++k) {
    BigReal piece = (d[k] - d[n]) * pow(BigReal(k + 1), -s);
    sum += (k % 2 ? -piece : piece);
  }
  return -sum / (d[n] * (1 - pow(BigReal(2), 1 - s)));
}

struct PreciseSeries {
  std::vector<double> terms;
  std::vector<double> partial_sums;
  std::vector<double> abs_errors;  ///< |partial_sum(n) - log Z|, exact to ~1e-100
  double log_z = 0;
  int polymer_count = 0;
};

/// Cluster series and exact log Z of the same volume in 120-digit arithmetic.
inline PreciseSeries truncated_log_z_precise(const ModelParams& params, int order,
                                             int diam_cap = -1) {
  BigReal alpha = params.alpha;
  BigReal beta = params.beta;
  auto out = detail::truncated_log_z_t<BigReal>(params, order, diam_cap, alpha, beta,
                                                riemann_zeta_big(alpha));
  PreciseSeries s;
  s.polymer_count = out.polymer_count;
  s.log_z = static_cast<double>(out.log_z);
  for (int n = 0; n < order; ++n) {
    s.terms.push_back(static_cast<double>(out.terms[n]));
    s.partial_sums.push_back(static_cast<double>(out.partials[n]));
    BigReal err = out.partials[n] - out.log_z;
    s.abs_errors.push_back(static_cast<double>(abs(err)));
  }
  return s;
}

}  // namespace polygas
