#include "fthresh/jacobian.hpp"

namespace fthresh {

Ideal jacobian(const Polynomial& f) {
  std::vector<Polynomial> gens;
  if (!f.is_zero()) gens.push_back(f);
  for (std::size_t i = 0; i < f.ring()->dimension(); ++i) {
    Polynomial d = partial_derivative(f, i);
    if (!d.is_zero()) gens.push_back(std::move(d));
  }
  return Ideal(f.ring(), std::move(gens));
}

}  // namespace fthresh
