// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "nlev/rational.hpp"

namespace nlev {

struct RealRoot {
  double value = 0.0;
  int multiplicity = 1;
};

/// All real roots of a polynomial with exact rational coefficients (ascending
/// powers), with exact multiplicities. Square-free decomposition is done in
/// Q[x]; each square-free factor is isolated with a Sturm sequence and the
/// roots are bisected to double precision. Sorted ascending.
std::vector<RealRoot> real_roots(std::span<const Rational> coeffs);

}  // namespace nlev
