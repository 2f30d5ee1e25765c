#include "radproof/sequence.hpp"

namespace radproof {

std::vector<Interval> cheb_weights(double nu, std::size_t degree) {
  std::vector<Interval> w(degree + 1);
  w[0] = Interval(1.0);
  Interval p(2.0);
  const Interval n(nu);
  for (std::size_t k = 1; k <= degree; ++k) {
    p *= n;
    w[k] = p;
  }
  return w;
}

}  // namespace radproof
