#pragma once

#include "fthresh/groebner.hpp"

namespace fthresh {

/// Jac(f) = (f, ∂f/∂x_1, ..., ∂f/∂x_n).
Ideal jacobian(const Polynomial& f);

}  // namespace fthresh
