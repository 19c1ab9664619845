// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "nlev/log_complex.hpp"
#include "nlev/polynomial.hpp"

namespace nlev {

/// Knobs for the recessive-solution integrator.
struct OdeConfig {
  /// Seeds must sit at X0 >= s_margin * (1 + |z|).
  double s_margin = 3.0;
  /// Local error allowed per unit length of x, relative to the solution.
  double error_target = 1e-10;
  /// Step length is capped at step_factor / (1 + |Q(x, z)|).
  double step_factor = 4.0;
  /// Degree of the local Taylor expansions.
  int taylor_order = 30;
  /// Route each solution through turning points of Q in the complex x-plane
  /// instead of along the real axis (see plan_paths).
  bool complex_paths = true;
};

enum class Side { plus, minus };

/// (psi, dpsi) at position x, true value exp(log_scale) * (psi, dpsi).
/// After every renormalization max(|psi|, |dpsi|) lies in [1, 2); the
/// rescaling factors are powers of two so the phases of psi and dpsi are
/// never perturbed.
struct ScaledPair {
  std::complex<double> x{0.0, 0.0};
  std::complex<double> psi{1.0, 0.0};
  std::complex<double> dpsi{0.0, 0.0};
  double log_scale = 0.0;

  double log_abs_psi() const;
  double log_abs_dpsi() const;
  /// dpsi / psi.
  std::complex<double> log_derivative() const { return dpsi / psi; }
};

/// Brings max(|psi|, |dpsi|) into [1, 2) by an exact power-of-two factor and
/// moves the factor into log_scale.
void renormalize(ScaledPair& pair);

/// Smallest admissible seed point for a given |z|.
double min_seed_point(double abs_z, const OdeConfig& cfg);

/// Seed point for a region of radius R, with R scaled by the coefficient
/// root bound max(1, |c_j|^{1/(m-1-j)}).
double seed_point_for(const ExtendedPolynomial& q, double region_radius, const OdeConfig& cfg);

/// Leading-order asymptotic data for the solution decaying at +inf (plus) or
/// -inf (minus), placed at x = +X0 or -X0. The exponential factor
/// exp(-+P(+-X0, z)) * X0^{-(m-1)/2} is carried exactly: its modulus in
/// log_scale, its phase in psi/dpsi.
ScaledPair seed(const ExtendedPolynomial& q, std::complex<double> z, Side side, double X0,
                const OdeConfig& cfg = {});

struct IntegrationStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
};

/// Integrates psi'' = Q(x, z)^2 psi from the seed position to x_end (default 0).
ScaledPair integrate_inward(const ExtendedPolynomial& q, std::complex<double> z,
                            const ScaledPair& start, const OdeConfig& cfg = {},
                            IntegrationStats* stats = nullptr, double x_end = 0.0);

/// Integrates along the polyline start.x -> waypoints[0] -> waypoints[1] -> ...
/// in the complex x-plane. Q is entire in x, so the result is the analytic
/// continuation of the solution along the path.
ScaledPair integrate_path(const ExtendedPolynomial& q, std::complex<double> z,
                          const ScaledPair& start, std::span<const std::complex<double>> waypoints,
                          const OdeConfig& cfg = {}, IntegrationStats* stats = nullptr);

/// Roots of x -> Q(x, z), sorted by real then imaginary part.
std::vector<std::complex<double>> turning_points(const ExtendedPolynomial& q, std::complex<double> z);

/// Waypoints (ending at x = 0) for the two recessive solutions. Along the real
/// axis a solution can become subdominant between complex turning points and
/// lose all accuracy; each candidate polyline through up to two turning points
/// is scored by a WKB estimate of error growth and the cheapest is used.
struct PathPlan {
  std::vector<std::complex<double>> plus;
  std::vector<std::complex<double>> minus;
  double plus_score = 0.0;
  double minus_score = 0.0;
};

PathPlan plan_paths(const ExtendedPolynomial& q, std::complex<double> z, double X0,
                    const OdeConfig& cfg = {});

/// Both recessive solutions evaluated at x = 0.
struct RecessivePair {
  ScaledPair plus;
  ScaledPair minus;
};

RecessivePair recessive_at_origin(const ExtendedPolynomial& q, std::complex<double> z, double X0,
                                  const OdeConfig& cfg = {});

/// W(z) = psi+ psi-' - psi- psi+' at x = 0, seeds placed at +-X0.
LogComplex wronskian_ode(const ExtendedPolynomial& q, std::complex<double> z, double X0,
                         const OdeConfig& cfg = {});

/// Same, with X0 = s_margin * (1 + region_radius); region_radius must bound |z|.
LogComplex wronskian_ode_region(const ExtendedPolynomial& q, std::complex<double> z,
                                double region_radius, const OdeConfig& cfg = {});

}  // namespace nlev
