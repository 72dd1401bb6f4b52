#include "polygas/params.hpp"

#include <algorithm>
#include <stdexcept>

namespace polygas {

void ModelParams::validate() const {
  if (!(alpha > 1.0 && alpha <= 2.0))
    throw std::invalid_argument("params: alpha must lie in (1, 2]");
  if (!(beta >= 0.0)) throw std::invalid_argument("params: beta must be >= 0");
  if (!(m_param > 1.0)) throw std::invalid_argument("params: M must be > 1");
  if (!(dist_exponent > 1.0 && dist_exponent < 2.0))
    throw std::invalid_argument("params: distancing exponent must lie in (1, 2)");
  if (lambda.empty()) throw std::invalid_argument("params: lambda must be nonempty");
  if (!std::is_sorted(lambda.begin(), lambda.end()) ||
      std::adjacent_find(lambda.begin(), lambda.end()) != lambda.end())
    throw std::invalid_argument("params: lambda must be sorted and duplicate-free");
  for (const auto& [x, h] : field) {
    (void)h;
    if (!std::binary_search(lambda.begin(), lambda.end(), x))
      throw std::invalid_argument("params: field support must lie inside lambda");
  }
}

std::vector<int> ModelParams::interval(int a, int b) {
  if (a > b) throw std::invalid_argument("interval: a > b");
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(b - a + 1));
  for (int x = a; x <= b; ++x) v.push_back(x);
  return v;
}

}  // namespace polygas
