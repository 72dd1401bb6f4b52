#pragma once

#include <utility>
#include <vector>

#include "polygas/polymer.hpp"

namespace polygas {

/// Incompatibility graph of an ordered tuple of polymers: vertices are tuple
/// indices, edges the incompatible pairs.
struct ClusterTuple {
  int n = 0;
  std::vector<std::pair<int, int>> incompat_edges;

  static ClusterTuple from_polymers(const std::vector<Polymer>& tuple,
                                    const ModelParams& params);
};

/// Ursell function: sum over connected graphs inside the incompatibility
/// graph of (-1)^(edge count). Zero when that graph does not span the tuple.
/// Refuses n > 8.
double ursell(const ClusterTuple& ct);

/// Tree-graph bound: number of labeled spanning trees inside the
/// incompatibility graph; dominates |ursell|.
long long penrose_bound(const ClusterTuple& ct);

/// Truncated cluster-expansion series for log Z.
struct TruncatedSeries {
  int order = 0;
  std::vector<double> terms;         ///< per-order contributions S_1..S_N
  std::vector<double> partial_sums;  ///< cumulative values
  double reference_log_z = 0;        ///< exact log Z of the same volume
  int polymer_count = 0;             ///< size of the truncated polymer universe
  int diam_cap = -1;                 ///< contour-diameter truncation (< 0: none)
};

/// S_n = (1/n!) sum over n-tuples of polymers of ursell * prod of
/// activities, evaluated over multisets with multiplicity factors.
/// Refuses |lambda| > 6 or order > 4.
TruncatedSeries truncated_log_z(const ModelParams& params, int order, int diam_cap = -1);

/// Energy-entropy sums over contours through the origin.
struct PeierlsSums {
  double beta = 0;
  int max_diam = 0;
  double origin_sum = 0;      ///< sum over contours with 0 in I_- of e^(-beta H)
  double class_sum = 0;       ///< sum over translation classes of e^(-beta H)
  double class_weighted = 0;  ///< sum over classes of |I_-| e^(-beta H)
  /// class_sum <= origin_sum and origin_sum == class_weighted exactly.
  bool sandwich_ok = false;
};

PeierlsSums peierls_sum(const ModelParams& params, double beta, int max_diam);

}  // namespace polygas
