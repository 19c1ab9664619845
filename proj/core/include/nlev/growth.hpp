// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "nlev/evaluator.hpp"
#include "nlev/polynomial.hpp"
#include "nlev/recessive.hpp"

namespace nlev {

enum class GrowthRegime { exponential, polynomial };

std::string to_string(GrowthRegime r);

/// Two competing least-squares models for y(r) = log|F|:
///   exponential: y = a + b r^m,    polynomial: y = a + N log r.
/// RMS residuals decide the regime.
struct RegimeFit {
  double exp_intercept = 0.0;
  double exp_coeff = 0.0;
  double exp_residual = 0.0;
  double poly_intercept = 0.0;
  double poly_power = 0.0;
  double poly_residual = 0.0;
  GrowthRegime regime = GrowthRegime::polynomial;
};

RegimeFit fit_regimes(const std::vector<double>& r, const std::vector<double>& y, int m);

/// Best fit of y = a + c log r + b r^rho over rho.
struct OrderFit {
  double order = 0.0;
  double coeff = 0.0;
  double log_coeff = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

OrderFit fit_growth_order(const std::vector<double>& r, const std::vector<double>& y,
                          double rho_min = 0.25, double rho_max = 8.0);

struct RayProfile {
  double angle = 0.0;
  std::vector<double> radii;
  std::vector<double> log_mag;
  double growth_order = 0.0;
  double leading_coeff = 0.0;
  double residual = 0.0;
  RegimeFit regimes;
};

/// Samples log|W(r e^{i angle})| and fits both regimes plus a free order.
/// Needs at least 5 increasing radii.
RayProfile ray_profile(const Evaluator& w, double angle, const std::vector<double>& radii, int m);

struct GrowthSample {
  double z = 0.0;
  double log_psi_plus = 0.0;     // log |psi+(0)|
  double log_dpsi_minus = 0.0;   // log |psi-'(0)|
};

struct GrowthReport {
  std::vector<GrowthSample> samples;
  RegimeFit psi_plus;
  RegimeFit dpsi_minus;
};

/// Recessive data at the origin for Q = x^{m-1} - z^k x^{m-k-1} along real z >= 1.
GrowthReport growth_diagnostics(int m, int k, const std::vector<double>& zs,
                                const OdeConfig& cfg = {});

/// Q = x^{m-1} - z^k x^{m-k-1}.
ExtendedPolynomial two_term_family(int m, int k);

}  // namespace nlev
