// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlev/canonical.hpp"
#include "nlev/factored.hpp"
#include "nlev/log_complex.hpp"
#include "nlev/polynomial.hpp"
#include "nlev/recessive.hpp"
#include "nlev/zero_finder.hpp"

namespace nlev {

enum class Classification { hypoelliptic, not_hypoelliptic, unknown };

std::string to_string(Classification c);

struct VerdictConfig {
  Rectangle region = make_rect(-4.0, 4.0, -4.0, 4.0);
  SearchOptions search;
  OdeConfig ode;
  /// Oracle confirmation: an FD indicator minimum within this distance.
  double oracle_radius = 1e-2;
  int oracle_n = 1600;
  /// Zeros (smallest |z| first) sent to the oracle.
  int max_confirmations = 4;
  double min_residual_drop = 12.0;
};

struct Evidence {
  ZeroRecord zero;
  bool oracle_confirmed = false;
  std::complex<double> oracle_location{0.0, 0.0};
  double oracle_distance = 0.0;
};

struct Verdict {
  /// Present for series input.
  std::optional<Invariants> invariants;
  /// Polynomial whose zeros were searched (after shift reduction).
  ExtendedPolynomial Q = ExtendedPolynomial::monomial(2);
  std::optional<std::complex<double>> shift;
  Classification classification = Classification::unknown;
  std::vector<Evidence> evidence;
  std::string evidence_note;
  std::optional<Rectangle> searched_region;
  int zeros_found = 0;
  std::vector<std::string> notes;
};

Verdict verdict(const ThetaSeries& theta, const VerdictConfig& cfg = {});
Verdict verdict(const ExtendedPolynomial& q, const VerdictConfig& cfg = {});

/// Confirms one zero against the finite-difference pencil.
Evidence confirm_with_oracle(const ExtendedPolynomial& q, const ZeroRecord& zero, double radius,
                             int n = 1600);

enum class Family { squared, factored };

struct GridPoint {
  std::complex<double> z;
  LogComplex w;
};

/// W on an (n_re x n_im) grid over the region, rows by increasing Im z.
/// The squared family fixes the seed point from the region.
std::vector<GridPoint> wronskian_grid(const ExtendedPolynomial& q, const Rectangle& region, int n_re,
                                      int n_im, Family family, const OdeConfig& ode = {},
                                      const QuadConfig& quad = {});

struct AsymptoticsReport {
  AsymptoticProfile profile;
  double predicted_exponent = 0.0;
  double fitted_exponent = 0.0;
  double fitted_log_c = 0.0;
  double fit_residual = 0.0;
  std::vector<double> zs;
  std::vector<double> log_w;
  bool agrees = false;
  double tolerance = 0.05;
};

/// Fits log W(z) - 2 eta z^m = log c + e log z on real z in [z1, z2].
AsymptoticsReport asymptotics_report(const ExtendedPolynomial& q, double z1 = 2.0, double z2 = 5.0,
                                     int samples = 13, const QuadConfig& quad = {});

/// Q_zeta(x, z) = x^{m-1} + sum_j g_j(zeta) z^{m-1-j} x^j with each g_j a
/// polynomial in zeta (ascending coefficients).
struct PolynomialFamily {
  int m = 2;
  std::map<int, std::vector<std::complex<double>>> g;

  ExtendedPolynomial at(std::complex<double> zeta) const;
};

struct Trajectory {
  int id = 0;
  /// One entry per zeta sample; empty where the track is absent.
  std::vector<std::optional<std::complex<double>>> points;
  int started_at = 0;
  /// Sample index at which the track was lost, if it was.
  std::optional<int> lost_at;
};

struct SweepResult {
  std::vector<std::complex<double>> zetas;
  std::vector<Trajectory> trajectories;
  std::vector<std::string> notes;
};

struct SweepConfig {
  Rectangle region = make_rect(-2.0, 2.0, -2.0, 2.0);
  double tracking_radius = 0.5;
  SearchOptions search;
  OdeConfig ode;
};

/// Nearest-neighbour continuation of zeros across consecutive zeta samples.
SweepResult sweep_family(const PolynomialFamily& family, const std::vector<std::complex<double>>& zetas,
                         const SweepConfig& cfg = {});

}  // namespace nlev
