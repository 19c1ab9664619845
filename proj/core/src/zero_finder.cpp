// SPDX-License-Identifier: Apache-2.0
#include "nlev/zero_finder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "nlev/errors.hpp"
#include "nlev/growth.hpp"
#include "nlev/parallel.hpp"

namespace nlev {

using cplx = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxDrop = 745.0;

double wrap(double d) { return std::remainder(d, kTwoPi); }

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double hi = v[mid];
  const double lo = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lo + hi);
}

struct Node {
  double t;
  cplx z;
  LogComplex v;
};

LogComplex sample(const Evaluator& f, cplx z) {
  const LogComplex v = f(z);
  if (v.is_zero() || !std::isfinite(v.log_mag) || !std::isfinite(v.phase))
    throw Error(ErrorKind::BoundaryZero, "evaluator vanished or failed on the contour");
  return v;
}

}  // namespace

double Rectangle::max_abs() const {
  const double re = std::max(std::abs(lo_re()), std::abs(hi_re()));
  const double im = std::max(std::abs(lo_im()), std::abs(hi_im()));
  return std::hypot(re, im);
}

bool Rectangle::contains(cplx z, double slack) const {
  return z.real() >= lo_re() - slack && z.real() <= hi_re() + slack && z.imag() >= lo_im() - slack &&
         z.imag() <= hi_im() + slack;
}

Rectangle Rectangle::inflated(double factor) const {
  return {center, half_w * factor, half_h * factor, plane};
}

Rectangle Rectangle::conj() const { return {std::conj(center), half_w, half_h, plane}; }

Rectangle make_rect(double re0, double re1, double im0, double im1, Plane plane) {
  if (!(re1 > re0) || !(im1 > im0)) throw Error(ErrorKind::InvalidInput, "empty rectangle");
  return {cplx(0.5 * (re0 + re1), 0.5 * (im0 + im1)), 0.5 * (re1 - re0), 0.5 * (im1 - im0), plane};
}

WindingResult winding_contour(const Evaluator& f, const Rectangle& rect, const WindingOptions& opt) {
  const std::array<cplx, 5> corner = {cplx(rect.lo_re(), rect.lo_im()), cplx(rect.hi_re(), rect.lo_im()),
                                      cplx(rect.hi_re(), rect.hi_im()), cplx(rect.lo_re(), rect.hi_im()),
                                      cplx(rect.lo_re(), rect.lo_im())};
  auto point = [&](double t) {
    const int e = std::min(static_cast<int>(t), 3);
    return corner[e] + (corner[e + 1] - corner[e]) * (t - e);
  };
  const int n = std::max(opt.initial_samples, 2);
  std::vector<Node> base;
  for (int e = 0; e < 4; ++e) {
    for (int k = 0; k < n; ++k) {
      const double t = e + static_cast<double>(k) / n;
      const cplx z = point(t);
      base.push_back({t, z, sample(f, z)});
    }
  }
  const std::size_t nb = base.size();

  // Dip guard: a sample far below both of its neighbours.
  for (std::size_t i = 0; i < nb; ++i) {
    const double ref = std::min(base[(i + nb - 1) % nb].v.log_mag, base[(i + 1) % nb].v.log_mag);
    if (ref - base[i].v.log_mag >= opt.dip_threshold)
      throw Error(ErrorKind::BoundaryZero, "log-magnitude dip on the contour");
  }

  const double min_dt = 4.0 * opt.min_segment;
  WindingResult out;
  double unwrapped = base[0].v.phase;
  out.samples.push_back({0.0, base[0].z, base[0].v.log_mag, unwrapped});

  for (std::size_t i = 0; i < nb; ++i) {
    const Node a0 = base[i];
    Node b0 = base[(i + 1) % nb];
    if (i + 1 == nb) b0.t = 4.0;
    const double la = a0.v.log_mag, lb = b0.v.log_mag;
    // Depth-first bisection, left to right.
    std::vector<Node> stack{b0};
    Node left = a0;
    while (!stack.empty()) {
      const Node right = stack.back();
      const double d = wrap(right.v.phase - left.v.phase);
      // log f is analytic, so a large change in log|f| also signals an
      // under-resolved phase.
      const double dl = std::abs(right.v.log_mag - left.v.log_mag);
      const bool coarse = std::abs(d) >= opt.phase_step_max || dl >= opt.phase_step_max;
      if (coarse && right.t - left.t < min_dt)
        throw Error(ErrorKind::BoundaryZero, "unresolved phase jump on the contour");
      const double tm = 0.5 * (left.t + right.t);
      const cplx zm = point(tm);
      const LogComplex vm = sample(f, zm);
      if (std::min(la, lb) - vm.log_mag >= opt.dip_threshold)
        throw Error(ErrorKind::BoundaryZero, "log-magnitude dip on the contour");
      const double d1 = wrap(vm.phase - left.v.phase), d2 = wrap(right.v.phase - vm.phase);
      // Accept only if the midpoint confirms the step (guards against aliasing).
      const bool confirmed = !coarse && std::abs(d1) < opt.phase_step_max && std::abs(d2) < opt.phase_step_max &&
                             std::abs(d1 + d2 - d) < 1e-9;
      if (!confirmed && right.t - left.t >= min_dt) {
        stack.push_back({tm, zm, vm});
        continue;
      }
      unwrapped += d1;
      out.samples.push_back({tm, zm, vm.log_mag, unwrapped});
      unwrapped += d2;
      out.samples.push_back({right.t, right.z, right.v.log_mag, unwrapped});
      left = right;
      stack.pop_back();
    }
  }
  const double turns = (unwrapped - base[0].v.phase) / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 0.05)
    throw Error(ErrorKind::PhaseAmbiguous, "winding " + std::to_string(turns) + " is not near an integer");
  out.winding = static_cast<int>(rounded);
  return out;
}

int winding_number(const Evaluator& f, const Rectangle& rect, const WindingOptions& opt) {
  return winding_contour(f, rect, opt).winding;
}

double residual_drop(const Evaluator& f, cplx center, double radius, int n) {
  std::vector<double> ring;
  for (int i = 0; i < n; ++i) ring.push_back(f(center + std::polar(radius, kTwoPi * (i + 0.5) / n)).log_mag);
  const double c = f(center).log_mag;
  const double drop = median(ring) - c;
  return std::isfinite(drop) ? std::min(drop, kMaxDrop) : kMaxDrop;
}

ZeroRecord refine_zero(const Evaluator& f, cplx approx, double box_radius, const RefineOptions& opt) {
  const double r0 = std::max(box_radius, 1e-9 * (1.0 + std::abs(approx)));
  std::vector<double> ring;
  for (int i = 0; i < 8; ++i) ring.push_back(f(approx + std::polar(r0, kTwoPi * (i + 0.5) / 8)).log_mag);
  const double shift = median(ring);
  if (!std::isfinite(shift)) throw Error(ErrorKind::NoConvergence, "no finite scale near the start point");
  auto g = [&](cplx z) { return f(z).scaled(shift); };

  cplx z0 = approx, z1 = approx + 0.1 * r0;
  cplx g0 = g(z0), g1 = g(z1);
  cplx best = std::abs(g0) <= std::abs(g1) ? z0 : z1;
  double best_abs = std::min(std::abs(g0), std::abs(g1));
  int since_best = 0;
  bool stalled = false;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (g1 == cplx(0.0, 0.0)) break;
    const cplx den = g1 - g0;
    if (den == cplx(0.0, 0.0)) {
      stalled = true;
      break;
    }
    const cplx z2 = z1 - g1 * (z1 - z0) / den;
    if (!std::isfinite(z2.real()) || !std::isfinite(z2.imag()) ||
        std::abs(z2 - approx) > opt.escape_factor * r0)
      throw Error(ErrorKind::NoConvergence, "secant iterate left the search box");
    const double step = std::abs(z2 - z1);
    z0 = z1;
    g0 = g1;
    z1 = z2;
    g1 = g(z1);
    if (std::abs(g1) < best_abs) {
      best_abs = std::abs(g1);
      best = z1;
      since_best = 0;
    } else if (++since_best >= 4) {
      stalled = true;
      break;
    }
    if (step < opt.tol * std::max(1.0, std::abs(z1))) break;
  }
  if (it == opt.max_iterations)
    throw Error(ErrorKind::NoConvergence, "secant iteration did not converge");

  ZeroRecord rec;
  rec.location = stalled ? best : z1;
  rec.iterations = it;
  rec.box_radius = box_radius;
  rec.residual_logmag_drop = residual_drop(f, rec.location, opt.residual_radius);
  if (stalled && rec.residual_logmag_drop < 12.0)
    throw Error(ErrorKind::NoConvergence, "secant iteration stalled away from a zero");
  return rec;
}

namespace {

struct Box {
  Rectangle rect;
  int winding;
  int depth;
  std::string history;
};

// Children SW, SE, NW, NE for split lines at (sx, sy).
std::array<Rectangle, 4> split(const Rectangle& r, double sx, double sy) {
  return {make_rect(r.lo_re(), sx, r.lo_im(), sy, r.plane), make_rect(sx, r.hi_re(), r.lo_im(), sy, r.plane),
          make_rect(r.lo_re(), sx, sy, r.hi_im(), r.plane), make_rect(sx, r.hi_re(), sy, r.hi_im(), r.plane)};
}

std::array<Box, 4> subdivide(const Evaluator& f, const Box& parent, const WindingOptions& wopt) {
  const Rectangle& r = parent.rect;
  std::string last_error = "winding not conserved under subdivision";
  for (int attempt = 0; attempt <= 5; ++attempt) {
    const double sign = attempt % 2 == 1 ? 1.0 : -1.0;
    const double off = 0.03 * ((attempt + 1) / 2) * sign;
    const auto kids = split(r, r.center.real() + off * r.half_w, r.center.imag() + off * r.half_h);
    try {
      std::array<Box, 4> out;
      int sum = 0;
      for (int c = 0; c < 4; ++c) {
        const int w = winding_number(f, kids[c], wopt);
        out[c] = {kids[c], w, parent.depth + 1, parent.history + static_cast<char>('0' + c)};
        sum += w;
      }
      if (sum == parent.winding) return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BoundaryZero) throw;
      last_error = e.what();
    }
  }
  throw Error(ErrorKind::PhaseAmbiguous, "subdivision failed: " + last_error);
}

}  // namespace

ZeroSet locate_zeros(const Evaluator& f_raw, const Rectangle& rect, const SearchOptions& opt) {
  const double scale = std::max({rect.max_abs(), rect.half_w, rect.half_h});
  const Evaluator f = memoized(f_raw, 1e-13 * scale);

  ZeroSet set;
  set.plane = rect.plane;
  std::optional<int> w0;
  Rectangle root = rect;
  for (int i = 0; i <= 5 && !w0; ++i) {
    root = rect.inflated(std::pow(1.03, i));
    try {
      w0 = winding_number(f, root, opt.winding);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BoundaryZero || i == 5) throw;
    }
  }
  set.region = root;
  set.total_winding = *w0;
  if (*w0 == 0) return set;

  std::vector<Box> level{{root, *w0, 0, ""}};
  std::vector<Box> finals;
  while (!level.empty()) {
    std::vector<Box> active;
    for (auto& b : level) {
      if (b.winding == 0) continue;
      if (std::max(b.rect.half_w, b.rect.half_h) <= opt.target_radius || b.depth >= opt.max_depth)
        finals.push_back(b);
      else
        active.push_back(b);
    }
    std::vector<std::array<Box, 4>> kids(active.size());
    parallel_for(active.size(), [&](std::size_t i) { kids[i] = subdivide(f, active[i], opt.winding); });
    level.clear();
    for (auto& k : kids) level.insert(level.end(), k.begin(), k.end());
  }

  std::vector<std::optional<ZeroRecord>> refined(finals.size());
  parallel_for(finals.size(), [&](std::size_t i) {
    const Box& b = finals[i];
    const double radius = std::max(b.rect.half_w, b.rect.half_h);
    try {
      ZeroRecord rec = refine_zero(f, b.rect.center, radius, opt.refine);
      if (b.rect.contains(rec.location, radius)) {
        rec.winding = b.winding;
        rec.history = b.history;
        refined[i] = rec;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoConvergence) throw;
    }
  });

  std::vector<ZeroRecord> found;
  for (std::size_t i = 0; i < finals.size(); ++i) {
    if (refined[i]) {
      found.push_back(*refined[i]);
    } else {
      set.unresolved.push_back(finals[i].rect);
      if (finals[i].depth >= opt.max_depth) set.depth_exhausted = true;
    }
  }
  std::sort(found.begin(), found.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    return a.location.real() != b.location.real() ? a.location.real() < b.location.real()
                                                  : a.location.imag() < b.location.imag();
  });
  for (const auto& rec : found) {
    auto same = std::find_if(set.zeros.begin(), set.zeros.end(), [&](const ZeroRecord& z) {
      return std::abs(z.location - rec.location) <= opt.target_radius;
    });
    if (same != set.zeros.end()) same->winding += rec.winding;
    else set.zeros.push_back(rec);
  }
  return set;
}

ZeroSet squared_zeros(const ExtendedPolynomial& q, const Rectangle& rect, const SearchOptions& opt,
                      const OdeConfig& cfg) {
  const double radius = rect.inflated(std::pow(1.03, 5)).max_abs();
  return locate_zeros(squared_evaluator(q, radius, cfg), rect, opt);
}

ZeroSet curlyW_zeros(int m, int k, const Rectangle& rect, const SearchOptions& opt, const OdeConfig& cfg) {
  Rectangle zr = rect;
  zr.plane = Plane::zeta;
  const auto q = two_term_family(m, k);
  const double radius = std::pow(zr.inflated(std::pow(1.03, 5)).max_abs(), 1.0 / k);
  return locate_zeros(root_substituted(squared_evaluator(q, radius, cfg), k), zr, opt);
}

Prop17 prop17_expected(int m, int k) {
  if (k < 1 || m - k - 1 < 0) throw Error(ErrorKind::InvalidInput, "prop17 needs 1 <= k <= m-1");
  Prop17 p;
  if (m % 2 == 1) p.reasons.push_back("m odd");
  if (k % 2 == 0) p.reasons.push_back("k even");
  if (m % 4 == 0) p.reasons.push_back("m divisible by 4");
  if (m % k != 0) p.reasons.push_back("m/k not an integer");
  p.expected = !p.reasons.empty();
  if (!p.expected) p.note = "no listed condition holds; zeros are still conjectured whenever Q is not x^{m-1}";
  return p;
}

}  // namespace nlev
