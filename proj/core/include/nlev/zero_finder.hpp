// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "nlev/evaluator.hpp"
#include "nlev/polynomial.hpp"
#include "nlev/recessive.hpp"

namespace nlev {

enum class Plane { z, zeta };

struct Rectangle {
  std::complex<double> center{0.0, 0.0};
  double half_w = 1.0;
  double half_h = 1.0;
  Plane plane = Plane::z;

  double lo_re() const { return center.real() - half_w; }
  double hi_re() const { return center.real() + half_w; }
  double lo_im() const { return center.imag() - half_h; }
  double hi_im() const { return center.imag() + half_h; }
  /// Largest |z| over the rectangle.
  double max_abs() const;
  bool contains(std::complex<double> z, double slack = 0.0) const;
  Rectangle inflated(double factor) const;
  Rectangle conj() const;
};

/// Rectangle [re0, re1] x [im0, im1].
Rectangle make_rect(double re0, double re1, double im0, double im1, Plane plane = Plane::z);

struct WindingOptions {
  double phase_step_max = std::numbers::pi / 2;
  int initial_samples = 16;        // per edge
  double dip_threshold = 10.0;     // log_mag drop that flags a boundary zero
  double min_segment = 1e-9;       // relative to the perimeter
};

/// A boundary sample; `t` runs over [0, 4) edge by edge, counterclockwise from
/// the lower-left corner.
struct ContourSample {
  double t = 0.0;
  std::complex<double> z;
  double log_mag = 0.0;
  double phase_unwrapped = 0.0;
};

struct WindingResult {
  int winding = 0;
  std::vector<ContourSample> samples;
};

WindingResult winding_contour(const Evaluator& f, const Rectangle& rect, const WindingOptions& opt = {});
int winding_number(const Evaluator& f, const Rectangle& rect, const WindingOptions& opt = {});

struct ZeroRecord {
  std::complex<double> location;
  int winding = 1;
  double residual_logmag_drop = 0.0;
  double box_radius = 0.0;
  std::string history;  // child indices from the root rectangle (0=SW, 1=SE, 2=NW, 3=NE)
  int iterations = 0;
};

struct ZeroSet {
  Plane plane = Plane::z;
  Rectangle region;  // as searched, after any inflation
  std::vector<ZeroRecord> zeros;
  std::vector<Rectangle> unresolved;
  bool depth_exhausted = false;
  int total_winding = 0;
};

struct RefineOptions {
  double tol = 1e-12;
  int max_iterations = 60;
  /// Radius of the circle on which the residual drop is measured.
  double residual_radius = 1e-2;
  /// Iterates may wander this many box radii from the start before giving up.
  double escape_factor = 4.0;
};

/// Secant iteration on W scaled by its local median magnitude. `box_radius`
/// sets the initial secant offset and the escape radius.
ZeroRecord refine_zero(const Evaluator& f, std::complex<double> approx, double box_radius,
                       const RefineOptions& opt = {});

/// Median over `n` points of log|f| on a circle, minus log|f(center)|.
double residual_drop(const Evaluator& f, std::complex<double> center, double radius, int n = 16);

struct SearchOptions {
  int max_depth = 12;
  double target_radius = 1e-3;
  WindingOptions winding;
  RefineOptions refine;
};

ZeroSet locate_zeros(const Evaluator& f, const Rectangle& rect, const SearchOptions& opt = {});

/// E(Q) in a rectangle: squared-family Wronskian with the seed point fixed
/// by the (inflated) rectangle.
ZeroSet squared_zeros(const ExtendedPolynomial& q, const Rectangle& rect,
                      const SearchOptions& opt = {}, const OdeConfig& cfg = {});

/// Zeros of zeta -> W(zeta^{1/k}) for Q = x^{m-1} - z^k x^{m-k-1}; rect lives in the zeta-plane.
ZeroSet curlyW_zeros(int m, int k, const Rectangle& rect, const SearchOptions& opt = {},
                     const OdeConfig& cfg = {});

struct Prop17 {
  bool expected = false;
  std::vector<std::string> reasons;
  std::string note;
};

/// Case table for the two-term family x^{m-1} - z^k x^{m-k-1}.
Prop17 prop17_expected(int m, int k);

}  // namespace nlev
