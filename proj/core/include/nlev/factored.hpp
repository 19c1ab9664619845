// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "nlev/log_complex.hpp"
#include "nlev/polynomial.hpp"

namespace nlev {

// The factored family (d/dx + Q)(-d/dx + Q) for Q of odd degree m-1 (m even).
// Its solution decaying at -inf is explicit,
//   psi(x) = exp(P(x, z)) * int_{-inf}^x exp(-2 P(y, z)) dy,
// and its Wronskian reduces to W(z) = int_R exp(-2 P(x, z)) dx.

struct QuadConfig {
  double quad_tol = 1e-12;
  /// Integration window: 2 Re P(x, z) - min_x 2 Re P >= lambda_cut outside it.
  double lambda_cut = 46.0;
};

struct FactoredValue {
  LogComplex psi;
  LogComplex dpsi;
};

FactoredValue factored_psi_minus(const ExtendedPolynomial& q, std::complex<double> z, double x,
                                 const QuadConfig& cfg = {});

LogComplex wronskian_factored(const ExtendedPolynomial& q, std::complex<double> z,
                              const QuadConfig& cfg = {});

/// Real-axis asymptotics of the factored Wronskian:
/// W(z) ~ c exp(-2 eta z^m) z^{1 - m/k} as z -> +inf.
struct AsymptoticProfile {
  double eta = 0.0;
  std::vector<double> maximizers;  // real roots x_j of Q(., 1) with -P(x_j, 1) = eta
  std::vector<int> orders;         // k_j for each maximizer
  int k = 0;
  double exponent = 0.0;           // 1 - m/k
};

AsymptoticProfile stationary_phase_profile(const ExtendedPolynomial& q);

}  // namespace nlev
