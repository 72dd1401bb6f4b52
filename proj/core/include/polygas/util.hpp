#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace polygas {

/// Pairwise (tree) reduction. Deterministic and with O(log n) error growth,
/// used for all energy sums.
double pairwise_sum(std::span<const double> xs);

/// Compensated (Kahan) accumulator for long one-pass reductions.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

/// Enumerates all set partitions of {0,...,n-1} as block-index vectors
/// (restricted growth strings): part[i] is the block of element i and blocks
/// are numbered in order of first appearance. Deterministic order.
void for_each_set_partition(int n, const std::function<void(const std::vector<int>&)>& fn);

/// Number of set partitions of an n-element set.
long long bell_number(int n);

long long factorial(int n);

}  // namespace polygas
