#include "polygas/zeta.hpp"

namespace polygas {

double riemann_zeta(double alpha) {
  if (!(alpha > 1.0))
    throw std::invalid_argument("riemann_zeta: requires alpha > 1");
  return detail::zeta_euler_maclaurin<double>(alpha);
}

}  // namespace polygas
