#include "polygas/util.hpp"

#include <stdexcept>

namespace polygas {

double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

namespace {

void set_partition_rec(int n, int i, int blocks, std::vector<int>& part,
                       const std::function<void(const std::vector<int>&)>& fn) {
  if (i == n) {
    fn(part);
    return;
  }
  for (int b = 0; b <= blocks; ++b) {
    part[i] = b;
    set_partition_rec(n, i + 1, b == blocks ? blocks + 1 : blocks, part, fn);
  }
}

}  // namespace

void for_each_set_partition(int n, const std::function<void(const std::vector<int>&)>& fn) {
  if (n < 0) throw std::invalid_argument("set partition: negative size");
  if (n == 0) {
    std::vector<int> empty;
    fn(empty);
    return;
  }
  std::vector<int> part(n, 0);
  set_partition_rec(n, 1, 1, part, fn);
}

long long bell_number(int n) {
  if (n < 0) throw std::invalid_argument("bell_number: negative");
  std::vector<std::vector<long long>> tri(n + 1);
  tri[0] = {1};
  for (int i = 1; i <= n; ++i) {
    tri[i].resize(i + 1);
    tri[i][0] = tri[i - 1][i - 1];
    for (int j = 1; j <= i; ++j) tri[i][j] = tri[i][j - 1] + tri[i - 1][j - 1];
  }
  return tri[n][0];
}

long long factorial(int n) {
  if (n < 0 || n > 20) throw std::invalid_argument("factorial: out of range");
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace polygas
