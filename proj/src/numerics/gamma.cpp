#include "qsl/numerics.hpp"

#include <cmath>

namespace qsl {

double euler_gamma(double n) {
  if (!(n > 0.0)) throw std::domain_error("euler_gamma: argument must be > 0");
  return std::tgamma(n);
}

}  // namespace qsl
