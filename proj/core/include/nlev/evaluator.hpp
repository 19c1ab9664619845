// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <memory>

#include "nlev/factored.hpp"
#include "nlev/log_complex.hpp"
#include "nlev/polynomial.hpp"
#include "nlev/recessive.hpp"

namespace nlev {

/// An entire function of z, sampled in log form.
using Evaluator = std::function<LogComplex(std::complex<double>)>;

/// Squared-family Wronskian with the seed point fixed for every |z| <= region_radius.
Evaluator squared_evaluator(const ExtendedPolynomial& q, double region_radius,
                            const OdeConfig& cfg = {});

/// Integral Wronskian of the factored family.
Evaluator factored_evaluator(const ExtendedPolynomial& q, const QuadConfig& cfg = {});

/// zeta -> f(zeta^{1/k}) with the principal root.
Evaluator root_substituted(Evaluator f, int k);

/// Thread-safe memoization keyed on z rounded to a grid of spacing `resolution`.
/// Samples shared between adjacent contours are computed once.
Evaluator memoized(Evaluator f, double resolution);

}  // namespace nlev
