#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "polygas/config.hpp"
#include "polygas/params.hpp"

namespace polygas {

/// Ground-truth engine: direct summation over all 2^|lambda| configurations
/// with plus boundary condition. Configurations are iterated as bitmasks of
/// the minus set in Gray-code order with incremental energy updates; the
/// range is split into fixed chunks merged in deterministic order, so
/// results are byte-identical for any worker count (POLYGAS_THREADS).
/// All enumerators refuse |lambda| > 22.

enum class BoundaryCondition { plus, minus };

/// Z = sum over configurations of e^(-beta H_h).
double exact_partition_function(const ModelParams& params,
                                BoundaryCondition bc = BoundaryCondition::plus);
double exact_log_partition_function(const ModelParams& params,
                                    BoundaryCondition bc = BoundaryCondition::plus);

/// Gibbs average of an arbitrary observable. The observable receives the
/// minus set as a bitmask: bit i set means lambda[i] carries spin -1.
double expectation(const ModelParams& params,
                   const std::function<double(std::uint64_t)>& observable);

/// P(sigma_x = -1); magnetization is 1 - 2 * minus_probability.
double minus_probability(const ModelParams& params, int x);
double magnetization(const ModelParams& params, int x);

/// <sigma_x sigma_y> - <sigma_x><sigma_y>, evaluated through minus-indicator
/// moments (4 [ <n_x n_y> - <n_x><n_y> ]) so that small values at large beta
/// suffer no catastrophic cancellation.
double truncated_two_point(const ModelParams& params, int x, int y);

/// Wick product < prod_{a in A} (sigma_a - <sigma_a>) >, |A| <= 5, computed
/// from joint minus-indicator moments in a single pass.
double wick_product(const ModelParams& params, const SiteSet& a_set);

struct CorrelationTable {
  SiteSet lambda;
  double beta = 0;
  double alpha = 0;
  std::map<std::pair<int, int>, double> pairs;  ///< truncated two-points
  std::map<int, double> magnetizations;
};

/// Magnetizations for all sites and truncated two-points for the requested
/// pairs, in one enumeration pass.
CorrelationTable correlation_table(const ModelParams& params,
                                   const std::vector<std::pair<int, int>>& pairs);

struct DecayFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  ///< rms deviation of log corr about the fit
  int points = 0;
};

/// Least-squares fit of log corr(0, r) against log r, r in [r_min, r_max].
/// Throws when fewer than 3 separations are available or a correlation in
/// range is not positive.
DecayFit decay_fit(const CorrelationTable& table, int r_min, int r_max);

}  // namespace polygas
