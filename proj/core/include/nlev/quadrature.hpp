// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>

namespace nlev {

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
  /// Integral of |f|; bounds the attainable absolute accuracy under cancellation.
  double abs_integral = 0.0;
  int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b], starting from
/// `initial_panels` equal panels. Stops when the error estimate is below
/// max(rel_tol * |I|, noise_floor * int|f|); throws QuadratureFail if
/// `max_intervals` is reached first.
QuadratureResult integrate_gk15(const std::function<std::complex<double>(double)>& f, double a,
                                double b, double rel_tol, int initial_panels = 16,
                                int max_intervals = 20000, double noise_floor = 1e-15);

}  // namespace nlev
