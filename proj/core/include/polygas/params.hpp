#pragma once

#include <map>
#include <vector>

namespace polygas {

/// Model parameters for the 1d long-range ferromagnetic chain with coupling
/// J(r) = r^-alpha and plus boundary condition.
struct ModelParams {
  double alpha = 2.0;          ///< decay exponent, 1 < alpha <= 2
  double beta = 1.0;           ///< inverse temperature, >= 0
  double m_param = 2.0;        ///< contour separation parameter M > 1
  double dist_exponent = 1.5;  ///< distancing exponent a in (1,2)
  std::vector<int> lambda;     ///< finite volume, sorted and duplicate-free
  std::map<int, double> field; ///< external field h, support inside lambda

  /// Throws std::invalid_argument if any invariant fails.
  void validate() const;

  bool has_field() const { return !field.empty(); }
  double field_at(int x) const {
    auto it = field.find(x);
    return it == field.end() ? 0.0 : it->second;
  }

  ModelParams with_beta(double b) const {
    ModelParams p = *this;
    p.beta = b;
    return p;
  }

  /// The integer interval [a, b].
  static std::vector<int> interval(int a, int b);
};

}  // namespace polygas
