// SPDX-License-Identifier: Apache-2.0
#include "nlev/recessive.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "nlev/errors.hpp"

namespace nlev {

using cplx = std::complex<double>;

double ScaledPair::log_abs_psi() const { return log_scale + std::log(std::abs(psi)); }
double ScaledPair::log_abs_dpsi() const { return log_scale + std::log(std::abs(dpsi)); }

void renormalize(ScaledPair& pair) {
  const double mx = std::max(std::abs(pair.psi), std::abs(pair.dpsi));
  if (mx == 0.0 || !std::isfinite(mx)) return;
  int e = 0;
  std::frexp(mx, &e);  // mx = f * 2^e, f in [0.5, 1)
  const int shift = e - 1;  // brings mx into [1, 2)
  if (shift == 0) return;
  pair.psi = cplx(std::ldexp(pair.psi.real(), -shift), std::ldexp(pair.psi.imag(), -shift));
  pair.dpsi = cplx(std::ldexp(pair.dpsi.real(), -shift), std::ldexp(pair.dpsi.imag(), -shift));
  pair.log_scale += shift * std::log(2.0);
}

double min_seed_point(double abs_z, const OdeConfig& cfg) { return cfg.s_margin * (1.0 + abs_z); }

double seed_point_for(const ExtendedPolynomial& q, double region_radius, const OdeConfig& cfg) {
  double rho = 1.0;
  for (int j = 0; j <= q.m() - 2; ++j) {
    const double a = std::abs(q.coeff(j));
    if (a > 0.0) rho = std::max(rho, std::pow(a, 1.0 / (q.m() - 1 - j)));
  }
  return min_seed_point(rho * region_radius, cfg);
}

ScaledPair seed(const ExtendedPolynomial& q, cplx z, Side side, double X0, const OdeConfig& cfg) {
  const double need = min_seed_point(std::abs(z), cfg);
  if (!(X0 >= need * (1.0 - 1e-12))) {
    throw Error(ErrorKind::BadSeed, "seed point X0=" + std::to_string(X0) +
                                        " below s_margin*(1+|z|)=" + std::to_string(need));
  }
  const int m = q.m();
  const bool odd_m = (m % 2) == 1;
  const double x = side == Side::plus ? X0 : -X0;
  const cplx Px = q.eval_antiderivative(x, z);
  const cplx Qx = q.eval(x, z);

  // Decaying branch toward the seed end: exp(-P) with psi'/psi = -Q, except
  // on the minus side for odd m, where it is exp(+P) with psi'/psi = +Q.
  const bool flip = side == Side::minus && odd_m;
  const cplx exponent = flip ? Px : -Px;
  const cplx ratio = flip ? Qx : -Qx;

  ScaledPair pair;
  pair.x = x;
  const cplx phase = std::polar(1.0, exponent.imag());
  pair.psi = phase;
  pair.dpsi = phase * ratio;
  pair.log_scale = exponent.real() - 0.5 * (m - 1) * std::log(X0);
  renormalize(pair);
  return pair;
}

namespace {

// One straight leg x -> x_end (complex) of psi'' = V psi with V = Q^2.
void integrate_leg(int m, const std::vector<cplx>& qz, ScaledPair& cur, cplx x_end,
                   const OdeConfig& cfg, IntegrationStats* stats) {
  const int N = std::max(cfg.taylor_order, 8);
  const int D = 2 * (m - 1);  // degree of Q^2 in x
  std::vector<cplx> qs(m), v(D + 1), w(D + 1), b(N + 1);

  const double span = std::abs(x_end - cur.x);
  if (span == 0.0) return;
  const cplx dir = (x_end - cur.x) / span;
  const cplx origin = cur.x;
  const double min_step = 1e-14 * std::max(std::abs(cur.x), 1.0);
  double done = 0.0;
  double h_suggest = span;

  while (done < span) {
    // Local expansion Q(x0 + s) = sum qs_i s^i and V = Q^2.
    qs.assign(qz.begin(), qz.end());
    for (int i = 0; i < m - 1; ++i) {
      for (int k = m - 2; k >= i; --k) qs[k] += cur.x * qs[k + 1];
    }
    std::fill(v.begin(), v.end(), cplx(0.0, 0.0));
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k) v[i + k] += qs[i] * qs[k];
    }
    const double weight0 = 1.0 + std::abs(qs[0]);
    const double remaining = span - done;
    double h_abs = std::min({h_suggest, cfg.step_factor / weight0, remaining});

    while (true) {
      if (h_abs < min_step && h_abs < remaining) {
        throw Error(ErrorKind::StepUnderflow, "step " + std::to_string(h_abs) + " at x=" +
                                                  std::to_string(cur.x.real()) + "+" +
                                                  std::to_string(cur.x.imag()) + "i");
      }
      const cplx h = dir * h_abs;
      cplx hp = h * h;
      for (int i = 0; i <= D; ++i) {
        w[i] = v[i] * hp;
        hp *= h;
      }
      b[0] = cur.psi;
      b[1] = h * cur.dpsi;
      for (int n = 0; n + 2 <= N; ++n) {
        cplx acc(0.0, 0.0);
        const int top = std::min(n, D);
        for (int i = 0; i <= top; ++i) acc += w[i] * b[n - i];
        b[n + 2] = acc / static_cast<double>((n + 1) * (n + 2));
      }
      cplx psi(0.0, 0.0), dpsi(0.0, 0.0);
      for (int n = N; n >= 1; --n) {
        psi += b[n];
        dpsi += static_cast<double>(n) * b[n];
      }
      psi += b[0];
      dpsi /= h;

      cplx q_end(0.0, 0.0);
      for (int k = m - 1; k >= 0; --k) q_end = q_end * h + qs[k];
      const double weight = std::max(weight0, 1.0 + std::abs(q_end));
      const double tail = std::abs(b[N - 1]) + std::abs(b[N]);
      const double dtail = ((N - 1) * std::abs(b[N - 1]) + N * std::abs(b[N])) / h_abs;
      const double err = std::max(tail, dtail / weight);
      const double scale = std::max(std::abs(psi), std::abs(dpsi) / weight);
      const double allowed = cfg.error_target * h_abs * scale;

      if (err <= allowed || h_abs <= min_step) {
        done = (h_abs == remaining) ? span : done + h_abs;
        cur.x = done == span ? x_end : origin + dir * done;
        cur.psi = psi;
        cur.dpsi = dpsi;
        const double mx = std::max(std::abs(psi), std::abs(dpsi));
        if (mx < 0.5 || mx > 2.0) renormalize(cur);
        if (stats) ++stats->steps;
        const double grow = err == 0.0 ? 2.0 : 0.9 * std::pow(allowed / err, 1.0 / (N - 1));
        h_suggest = h_abs * std::clamp(grow, 0.2, 2.0);
        break;
      }
      if (stats) ++stats->rejected;
      h_abs *= std::clamp(0.9 * std::pow(allowed / err, 1.0 / (N - 1)), 0.1, 0.5);
    }
  }
}

}  // namespace

ScaledPair integrate_path(const ExtendedPolynomial& q, cplx z, const ScaledPair& start,
                          std::span<const cplx> waypoints, const OdeConfig& cfg,
                          IntegrationStats* stats) {
  const auto qz = q.x_coefficients(z);
  ScaledPair cur = start;
  renormalize(cur);
  for (const cplx& x : waypoints) integrate_leg(q.m(), qz, cur, x, cfg, stats);
  renormalize(cur);
  return cur;
}

ScaledPair integrate_inward(const ExtendedPolynomial& q, cplx z, const ScaledPair& start,
                            const OdeConfig& cfg, IntegrationStats* stats, double x_end) {
  const cplx target(x_end, 0.0);
  return integrate_path(q, z, start, std::span<const cplx>(&target, 1), cfg, stats);
}

std::vector<cplx> turning_points(const ExtendedPolynomial& q, cplx z) {
  const auto a = q.x_coefficients(z);  // monic, degree m-1
  const int n = q.m() - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    companion(i, n - 1) = -a[i];
    if (i > 0) companion(i, i - 1) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  // Deterministic order.
  std::sort(roots.begin(), roots.end(), [](cplx u, cplx v) {
    return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag();
  });
  return roots;
}

namespace {

// Heuristic error growth (in log units) of one leg. Away from turning points
// the solutions behave like exp(+-P); errors can grow like the dominant one
// while the tracked solution grows like `branch` (exp(s P)) on a seed leg, or
// like |Re(P - P(t))| on a leg leaving the turning point t.
double leg_amplification(const Antiderivative& P, cplx z, cplx a, cplx b, bool from_seed, int sign) {
  constexpr int kSamples = 64;
  const double base = P.eval(a, z).real();
  double min1 = std::numeric_limits<double>::infinity(), min2 = min1, amp = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const cplx x = a + (b - a) * (static_cast<double>(i) / kSamples);
    const double d = P.eval(x, z).real();
    const double l = from_seed ? sign * d : std::abs(d - base);
    const double g1 = d - l, g2 = -d - l;
    min1 = std::min(min1, g1);
    min2 = std::min(min2, g2);
    amp = std::max({amp, g1 - min1, g2 - min2});
  }
  return amp;
}

double path_amplification(const Antiderivative& P, cplx z, cplx start, const std::vector<cplx>& way,
                          int sign) {
  double total = 0.0;
  cplx from = start;
  for (std::size_t i = 0; i < way.size(); ++i) {
    total += leg_amplification(P, z, from, way[i], i == 0, sign);
    from = way[i];
  }
  return total;
}

}  // namespace

PathPlan plan_paths(const ExtendedPolynomial& q, cplx z, double X0, const OdeConfig& cfg) {
  PathPlan plan;
  if (!cfg.complex_paths) {
    plan.plus = {cplx(0.0, 0.0)};
    plan.minus = {cplx(0.0, 0.0)};
    return plan;
  }
  const auto P = antiderivative(q);
  const auto tps = turning_points(q, z);
  std::vector<std::vector<cplx>> candidates{{cplx(0.0, 0.0)}};
  for (std::size_t i = 0; i < tps.size(); ++i) candidates.push_back({tps[i], cplx(0.0, 0.0)});
  for (std::size_t i = 0; i < tps.size(); ++i)
    for (std::size_t j = 0; j < tps.size(); ++j)
      if (i != j) candidates.push_back({tps[i], tps[j], cplx(0.0, 0.0)});

  auto best = [&](cplx start, int sign, double& score) {
    std::size_t arg = 0;
    score = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      // Prefer shorter plans unless a longer one is clearly better.
      const double a = path_amplification(P, z, start, candidates[c], sign) + 0.5 * (candidates[c].size() - 1);
      if (a < score - 1e-9) {
        score = a;
        arg = c;
      }
    }
    return candidates[arg];
  };
  plan.plus = best(cplx(X0, 0.0), -1, plan.plus_score);
  plan.minus = best(cplx(-X0, 0.0), q.m() % 2 == 1 ? 1 : -1, plan.minus_score);
  return plan;
}

RecessivePair recessive_at_origin(const ExtendedPolynomial& q, cplx z, double X0,
                                  const OdeConfig& cfg) {
  const PathPlan plan = plan_paths(q, z, X0, cfg);
  RecessivePair out;
  out.plus = integrate_path(q, z, seed(q, z, Side::plus, X0, cfg), plan.plus, cfg);
  out.minus = integrate_path(q, z, seed(q, z, Side::minus, X0, cfg), plan.minus, cfg);
  return out;
}

LogComplex wronskian_ode(const ExtendedPolynomial& q, cplx z, double X0, const OdeConfig& cfg) {
  const auto pr = recessive_at_origin(q, z, X0, cfg);
  const cplx w = pr.plus.psi * pr.minus.dpsi - pr.minus.psi * pr.plus.dpsi;
  LogComplex out = LogComplex::from_complex(w);
  if (!out.is_zero()) out.log_mag += pr.plus.log_scale + pr.minus.log_scale;
  return out;
}

LogComplex wronskian_ode_region(const ExtendedPolynomial& q, cplx z, double region_radius,
                                const OdeConfig& cfg) {
  const double X0 = seed_point_for(q, std::max(region_radius, std::abs(z)), cfg);
  return wronskian_ode(q, z, X0, cfg);
}

}  // namespace nlev
