// SPDX-License-Identifier: Apache-2.0
#include "nlev/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "nlev/errors.hpp"
#include "nlev/evaluator.hpp"
#include "nlev/oracle.hpp"
#include "nlev/parallel.hpp"

namespace nlev {

using cplx = std::complex<double>;

std::string to_string(Classification c) {
  switch (c) {
    case Classification::hypoelliptic: return "HYPOELLIPTIC";
    case Classification::not_hypoelliptic: return "NOT_HYPOELLIPTIC";
    case Classification::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

// Two-term shape x^{m-1} + c z^k x^{m-k-1} with real c != 0: returns k.
std::optional<int> single_term_k(const ExtendedPolynomial& q) {
  std::optional<int> k;
  for (int j = 0; j <= q.m() - 2; ++j) {
    const cplx c = q.coeff(j);
    if (c == cplx(0.0, 0.0)) continue;
    if (k || c.imag() != 0.0) return std::nullopt;
    k = q.m() - 1 - j;
  }
  return k;
}

void add_prediction_note(const ExtendedPolynomial& q, Verdict& v) {
  if (const auto k = single_term_k(q)) {
    const Prop17 p = prop17_expected(q.m(), *k);
    std::string reasons;
    for (const auto& r : p.reasons) reasons += (reasons.empty() ? "" : ", ") + r;
    if (p.expected) {
      v.notes.push_back("two-term case table predicts zeros (" + reasons + ")");
    } else {
      v.notes.push_back("two-term case table is silent: " + p.note);
    }
  }
  if (v.classification == Classification::unknown) {
    v.notes.push_back("Q is not x^{m-1}, so zeros are conjectured to exist; none confirmed in the searched region");
  }
}

Verdict search_and_classify(ExtendedPolynomial q, Verdict v, const VerdictConfig& cfg) {
  if (q.m() >= 3 && q.coeff(q.m() - 2) != cplx(0.0, 0.0)) {
    const auto red = shift_reduce(q);
    v.shift = red.shift;
    q = red.reduced;
  }
  v.Q = q;
  if (q.is_monomial()) {
    v.classification = Classification::hypoelliptic;
    v.evidence_note = "Q = x^" + std::to_string(q.m() - 1) + " (q = inf)";
    return v;
  }

  v.searched_region = cfg.region;
  ZeroSet zs;
  try {
    zs = squared_zeros(q, cfg.region, cfg.search, cfg.ode);
    v.searched_region = zs.region;
  } catch (const Error& e) {
    v.notes.push_back(std::string("zero search failed: ") + e.what());
    v.classification = Classification::unknown;
    add_prediction_note(q, v);
    return v;
  }
  v.zeros_found = static_cast<int>(zs.zeros.size());
  if (zs.depth_exhausted) v.notes.push_back("subdivision depth exhausted in part of the region");

  std::vector<ZeroRecord> candidates;
  for (const auto& z : zs.zeros)
    if (z.residual_logmag_drop >= cfg.min_residual_drop) candidates.push_back(z);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const ZeroRecord& a, const ZeroRecord& b) {
                     return std::abs(a.location) < std::abs(b.location);
                   });
  if (static_cast<int>(candidates.size()) > cfg.max_confirmations) candidates.resize(cfg.max_confirmations);

  std::vector<Evidence> checked(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) {
    checked[i] = confirm_with_oracle(q, candidates[i], cfg.oracle_radius, cfg.oracle_n);
  });
  for (auto& e : checked)
    if (e.oracle_confirmed) v.evidence.push_back(e);

  if (!v.evidence.empty()) {
    v.classification = Classification::not_hypoelliptic;
    v.evidence_note = "oracle-confirmed zero of W";
  } else {
    v.classification = Classification::unknown;
    v.evidence_note = candidates.empty() ? "no zero found in the searched region"
                                         : "zeros found but none confirmed by the oracle";
  }
  add_prediction_note(q, v);
  return v;
}

}  // namespace

Evidence confirm_with_oracle(const ExtendedPolynomial& q, const ZeroRecord& zero, double radius, int n) {
  Evidence e;
  e.zero = zero;
  const cplx z0 = zero.location;
  const FDGrid grid = fd_grid_for(q, std::abs(z0) + 0.1, n);
  const double half = 4.0 * radius;
  const Rectangle box = make_rect(z0.real() - half, z0.real() + half, z0.imag() - half, z0.imag() + half);
  const FDScan scan = fd_pencil_scan(q, box, 8, 8, grid);
  std::vector<cplx> minima = scan.minima;
  if (minima.empty()) {
    const auto best = std::min_element(scan.samples.begin(), scan.samples.end(),
                                       [](const FDSample& a, const FDSample& b) { return a.indicator < b.indicator; });
    minima.push_back(fd_minimize(q, best->z, half / 8.0, grid));
  }
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& m : minima) {
    const double d = std::abs(m - z0);
    if (d < best_d) {
      best_d = d;
      e.oracle_location = m;
    }
  }
  e.oracle_distance = best_d;
  e.oracle_confirmed = best_d <= radius;
  return e;
}

Verdict verdict(const ThetaSeries& theta, const VerdictConfig& cfg) {
  Verdict v;
  v.invariants = canonicalize_prepared(theta);
  const Invariants& inv = *v.invariants;
  v.Q = inv.Q;
  if (inv.q_infinite()) {
    v.classification = Classification::hypoelliptic;
    v.evidence_note = "q = inf (conditional on truncation N = " + std::to_string(theta.truncation_order) + ")";
    return v;
  }
  ExtendedPolynomial q = inv.Q;
  return search_and_classify(std::move(q), std::move(v), cfg);
}

Verdict verdict(const ExtendedPolynomial& q, const VerdictConfig& cfg) {
  return search_and_classify(q, Verdict{}, cfg);
}

std::vector<GridPoint> wronskian_grid(const ExtendedPolynomial& q, const Rectangle& region, int n_re,
                                      int n_im, Family family, const OdeConfig& ode,
                                      const QuadConfig& quad) {
  if (n_re < 1 || n_im < 1) throw Error(ErrorKind::InvalidInput, "grid needs at least one point per axis");
  const Evaluator f = family == Family::squared ? squared_evaluator(q, region.max_abs(), ode)
                                                : factored_evaluator(q, quad);
  auto coord = [](double lo, double hi, int n, int i) { return n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1); };
  std::vector<GridPoint> out(static_cast<std::size_t>(n_re) * n_im);
  for (int j = 0; j < n_im; ++j)
    for (int i = 0; i < n_re; ++i)
      out[j * n_re + i].z = cplx(coord(region.lo_re(), region.hi_re(), n_re, i),
                                 coord(region.lo_im(), region.hi_im(), n_im, j));
  parallel_for(out.size(), [&](std::size_t k) { out[k].w = f(out[k].z); });
  return out;
}

AsymptoticsReport asymptotics_report(const ExtendedPolynomial& q, double z1, double z2, int samples,
                                     const QuadConfig& quad) {
  if (samples < 3 || !(z2 > z1) || z1 <= 0.0) throw Error(ErrorKind::InvalidInput, "need 0 < z1 < z2 and at least 3 samples");
  AsymptoticsReport r;
  r.profile = stationary_phase_profile(q);
  r.predicted_exponent = r.profile.exponent;
  const int m = q.m();
  for (int i = 0; i < samples; ++i) r.zs.push_back(z1 + (z2 - z1) * i / (samples - 1));
  r.log_w.resize(samples);
  std::vector<double> y(samples);
  parallel_for(samples, [&](std::size_t i) {
    const LogComplex w = wronskian_factored(q, cplx(r.zs[i], 0.0), quad);
    r.log_w[i] = w.log_mag;
    y[i] = w.log_mag - 2.0 * r.profile.eta * std::pow(r.zs[i], m);
  });

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = std::log(r.zs[i]);
    sx += x;
    sy += y[i];
    sxx += x * x;
    sxy += x * y[i];
  }
  const double n = samples;
  r.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  r.fitted_log_c = (sy - r.fitted_exponent * sx) / n;
  double ss = 0;
  for (int i = 0; i < samples; ++i) {
    const double e = y[i] - r.fitted_log_c - r.fitted_exponent * std::log(r.zs[i]);
    ss += e * e;
  }
  r.fit_residual = std::sqrt(ss / n);
  r.agrees = std::abs(r.fitted_exponent - r.predicted_exponent) <= r.tolerance;
  return r;
}

ExtendedPolynomial PolynomialFamily::at(cplx zeta) const {
  std::map<int, cplx> c;
  for (const auto& [j, poly] : g) {
    cplx acc(0.0, 0.0);
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * zeta + *it;
    c[j] = acc;
  }
  return ExtendedPolynomial(m, c);
}

SweepResult sweep_family(const PolynomialFamily& family, const std::vector<cplx>& zetas,
                         const SweepConfig& cfg) {
  SweepResult res;
  res.zetas = zetas;
  const std::size_t ns = zetas.size();
  std::vector<std::vector<cplx>> found(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    try {
      const ZeroSet zs = squared_zeros(family.at(zetas[s]), cfg.region, cfg.search, cfg.ode);
      for (const auto& z : zs.zeros) found[s].push_back(z.location);
    } catch (const Error& e) {
      res.notes.push_back("sample " + std::to_string(s) + ": " + e.what());
    }
  }

  auto start_track = [&](std::size_t s, cplx z) {
    Trajectory t;
    t.id = static_cast<int>(res.trajectories.size());
    t.points.assign(ns, std::nullopt);
    t.points[s] = z;
    t.started_at = static_cast<int>(s);
    res.trajectories.push_back(std::move(t));
  };
  if (ns == 0) return res;
  for (const auto& z : found[0]) start_track(0, z);

  for (std::size_t s = 1; s < ns; ++s) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < res.trajectories.size(); ++i)
      if (!res.trajectories[i].lost_at && res.trajectories[i].points[s - 1]) active.push_back(i);

    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < active.size(); ++a)
      for (std::size_t b = 0; b < found[s].size(); ++b) {
        const double d = std::abs(*res.trajectories[active[a]].points[s - 1] - found[s][b]);
        if (d <= cfg.tracking_radius) pairs.emplace_back(d, a, b);
      }
    std::sort(pairs.begin(), pairs.end());
    std::vector<char> used_a(active.size(), 0), used_b(found[s].size(), 0);
    for (const auto& [d, a, b] : pairs) {
      if (used_a[a] || used_b[b]) continue;
      used_a[a] = used_b[b] = 1;
      res.trajectories[active[a]].points[s] = found[s][b];
    }
    for (std::size_t a = 0; a < active.size(); ++a) {
      if (used_a[a]) continue;
      auto& t = res.trajectories[active[a]];
      t.lost_at = static_cast<int>(s);
      res.notes.push_back(std::string(to_string(ErrorKind::TrackLost)) + ": trajectory " +
                          std::to_string(t.id) + " at sample " + std::to_string(s));
    }
    for (std::size_t b = 0; b < found[s].size(); ++b)
      if (!used_b[b]) start_track(s, found[s][b]);
  }
  return res;
}

}  // namespace nlev
