// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "nlev/log_complex.hpp"
#include "nlev/polynomial.hpp"
#include "nlev/zero_finder.hpp"

namespace nlev {

/// Dirichlet grid on [-L, L] with n interior points, h = 2L / (n + 1).
struct FDGrid {
  double L = 0.0;  // 0 selects a half-width from the region (see fd_grid_for)
  int n = 1600;
  double h() const { return 2.0 * L / (n + 1); }
};

/// Half-width covering the decay of the recessive solutions for |z| <= z_max.
FDGrid fd_grid_for(const ExtendedPolynomial& q, double z_max, int n = 1600);

/// Smallest singular value of the central-difference matrix of -D^2 + Q(x, z)^2.
double fd_indicator(const ExtendedPolynomial& q, std::complex<double> z, const FDGrid& grid);

struct FDSample {
  std::complex<double> z;
  double indicator = 0.0;
};

struct FDScan {
  FDGrid grid;
  int steps_re = 0;
  int steps_im = 0;
  std::vector<FDSample> samples;  // row-major
  std::vector<std::complex<double>> minima;  // refined local minima
};

/// Indicator on a (steps_re + 1) x (steps_im + 1) grid over the region, rows
/// ordered by increasing imaginary part. Interior local minima of the sampled
/// field are polished by a derivative-free 2-D search.
FDScan fd_pencil_scan(const ExtendedPolynomial& q, const Rectangle& region, int steps_re,
                      int steps_im, FDGrid grid = {});

/// Local minimizer of the indicator starting at `start` with initial radius `radius`.
std::complex<double> fd_minimize(const ExtendedPolynomial& q, std::complex<double> start,
                                 double radius, const FDGrid& grid);

/// Factored Wronskian int exp(-2 P) dx by composite trapezoid sums with step
/// halving, on a window from an a-priori tail bound.
LogComplex quad_oracle_factored(const ExtendedPolynomial& q, std::complex<double> z);

}  // namespace nlev
