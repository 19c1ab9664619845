// SPDX-License-Identifier: Apache-2.0
// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nlev/canonical.hpp"
#include "nlev/errors.hpp"
#include "nlev/evaluator.hpp"
#include "nlev/factored.hpp"
#include "nlev/growth.hpp"
#include "nlev/oracle.hpp"
#include "nlev/recessive.hpp"
#include "nlev/verdict.hpp"
#include "nlev/zero_finder.hpp"

using namespace nlev;
using C = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

ExtendedPolynomial poly(int m, std::vector<C> c) { return ExtendedPolynomial(m, std::move(c)); }

struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double wrap(double a) { return std::remainder(a, 2.0 * kPi); }

std::vector<C> locations(const ZeroSet& zs) {
  std::vector<C> out;
  for (const auto& z : zs.zeros) out.push_back(z.location);
  return out;
}

double multiset_distance(const std::vector<C>& a, const std::vector<C>& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  std::vector<char> used(b.size(), 0);
  for (const auto& x : a) {
    double best = INFINITY;
    std::size_t bi = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!used[i] && std::abs(b[i] - x) < best) best = std::abs(b[i] - x), bi = i;
    if (!std::isfinite(best)) return INFINITY;
    used[bi] = 1;
    worst = std::max(worst, best);
  }
  return worst;
}

ThetaSeries series(int m, int N, std::map<int, std::map<int, double>> beta) {
  ThetaSeries t;
  t.m = m;
  t.truncation_order = N;
  t.beta = std::move(beta);
  return t;
}

void c1(Check& c) {
  const auto lin = ExtendedPolynomial::monomial(2);
  const auto zs = locate_zeros(squared_evaluator(lin, 4.3), make_rect(-3, 3, -3, 3));
  c.expect(zs.zeros.empty() && zs.total_winding == 0, "zeros found for Q = x");
  const double X0 = min_seed_point(4.3, {});
  const auto ref = wronskian_ode(lin, C(0, 0), X0);
  for (C z : {C(0.3, -2.1), C(-1.7, 0.4), C(2.2, 2.9), C(-2.8, -1.1), C(1.1, 0.0)})
    c.expect(relative_difference(wronskian_ode(lin, z, X0), ref) < 1e-8, "W(Q = x) varies with z");
}

void c2(Check& c) {
  struct Case { int m, k; double r; };
  for (const auto& cs : {Case{3, 1, 2.0}, Case{3, 2, 1.2}, Case{4, 1, 2.0}, Case{4, 3, 1.0}}) {
    ExtendedPolynomial q = two_term_family(cs.m, cs.k);
    if (q.coeff(cs.m - 2) != C(0, 0)) q = shift_reduce(q).reduced;
    const std::string tag = "(" + std::to_string(cs.m) + "," + std::to_string(cs.k) + ")";
    ZeroSet zs;
    try {
      zs = squared_zeros(q, make_rect(-cs.r, cs.r, -cs.r, cs.r));
    } catch (const Error& e) {
      c.expect(false, tag + ": " + e.what());
      continue;
    }
    const ZeroRecord* best = nullptr;
    for (const auto& z : zs.zeros)
      if (z.residual_logmag_drop >= 12.0 && (!best || std::abs(z.location) < std::abs(best->location))) best = &z;
    if (!best) {
      c.expect(false, tag + ": no zero with residual drop >= 12");
      continue;
    }
    const auto e = confirm_with_oracle(q, *best, 1e-2);
    c.expect(e.oracle_confirmed, tag + ": oracle minimum at distance " + num(e.oracle_distance));
  }
}

void c3(Check& c) {
  for (const auto& q : {poly(3, {-1.0}), poly(4, {0.0, -1.0})}) {
    const auto f = squared_evaluator(q, 3.2);
    for (int i = 1; i <= 12; ++i) {
      const auto w = f(C(0.25 * i, 0));
      c.expect(std::isfinite(w.log_mag) && std::abs(wrap(w.phase)) < 1e-6, "phase " + num(w.phase) + " at z = " + num(0.25 * i));
    }
    try {
      c.expect(winding_number(f, make_rect(0.2, 3.05, -0.05, 0.05)) == 0, "winding around the real segment");
    } catch (const Error& e) {
      c.expect(false, std::string("real segment: ") + e.what());
    }
    for (double x : {0.5, 1.0, 2.0}) {
      bool failed = false;
      try {
        const auto r = refine_zero(f, C(x, 0.0), 0.05);
        failed = std::abs(r.location - C(x, 0.0)) > 0.2 || r.residual_logmag_drop < 12.0;
      } catch (const Error&) {
        failed = true;
      }
      c.expect(failed, "refine_zero converged from the real axis at " + num(x));
    }
  }
}

void c4(Check& c) {
  for (C z : {C(0, 0), C(1, 0), C(0, 1), C(-2, 1.5), C(3, -2)})
    c.expect(std::abs(wronskian_factored(ExtendedPolynomial::monomial(2), z).value() - std::sqrt(kPi)) < 1e-10, "Q = x");

  const auto tr = poly(4, {-1.0, 3.0, -3.0});  // (x - z)^3
  std::vector<double> zm, y;
  for (double z = 1.0; z <= 4.0 + 1e-12; z += 0.25) {
    zm.push_back(std::pow(z, 4));
    y.push_back(wronskian_factored(tr, C(z, 0)).log_mag);
  }
  const double n = zm.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < zm.size(); ++i) sx += zm[i], sy += y[i], sxx += zm[i] * zm[i], sxy += zm[i] * y[i];
  const double c2 = (n * sxy - sx * sy) / (n * sxx - sx * sx), c1 = (sy - c2 * sx) / n;
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < zm.size(); ++i) {
    worst = std::max(worst, std::abs(y[i] - c1 - c2 * zm[i]));
    scale = std::max(scale, std::abs(y[i]));
  }
  c.expect(worst < 1e-3 * scale, "translate family residual " + num(worst / scale));

  const auto q = poly(4, {0.0, -1.0});
  const auto zs = locate_zeros(factored_evaluator(q), make_rect(1.2, 2.2, 0.3, 1.2));
  if (zs.zeros.empty()) {
    c.expect(false, "no factored zero found");
    return;
  }
  const C z0 = zs.zeros.front().location;
  const double at = std::abs(quad_oracle_factored(q, z0).value());
  std::vector<double> ring;
  double agree = 0.0;
  for (int i = 0; i < 16; ++i) {
    const C z = z0 + std::polar(1e-2, 2.0 * kPi * i / 16);
    const auto o = quad_oracle_factored(q, z);
    ring.push_back(std::abs(o.value()));
    agree = std::max(agree, relative_difference(o, wronskian_factored(q, z)));
  }
  std::nth_element(ring.begin(), ring.begin() + 8, ring.end());
  c.expect(at <= 1e-8 * ring[8], "oracle |W| at the zero " + num(at) + " vs ring median " + num(ring[8]));
  c.expect(agree < 1e-8, "oracle disagreement " + num(agree));
}

void c5(Check& c) {
  const auto a = asymptotics_report(poly(4, {0.0, -1.0}));
  c.expect(std::abs(a.fitted_exponent + 1.0) <= 0.05, "x^3 - z^2 x exponent " + num(a.fitted_exponent));
  const auto b = asymptotics_report(poly(4, {-1.0}));
  c.expect(std::abs(b.profile.eta - 0.75) < 1e-12, "eta " + num(b.profile.eta));
  c.expect(std::abs(b.fitted_exponent + 1.0) <= 0.05, "x^3 - z^3 exponent " + num(b.fitted_exponent));
}

void c6(Check& c) {
  const auto f = squared_evaluator(poly(3, {-1.0}), 3.5);
  std::vector<double> radii;
  for (double r = 1.0; r <= 3.5 + 1e-12; r += 0.25) radii.push_back(r);
  const auto real_ray = ray_profile(f, 0.0, radii, 3);
  c.expect(real_ray.growth_order >= 2.7 && real_ray.growth_order <= 3.3, "order " + num(real_ray.growth_order));
  c.expect(ray_profile(f, kPi / 2, radii, 3).regimes.regime == GrowthRegime::polynomial, "pi/2 ray");
  c.expect(ray_profile(f, kPi / 4, radii, 3).regimes.regime == GrowthRegime::polynomial, "pi/4 ray");
  const auto g = growth_diagnostics(4, 3, {1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0});
  c.expect(g.dpsi_minus.regime == GrowthRegime::polynomial, "(4,3) derivative not polynomially bounded");
}

void c7(Check& c) {
  struct Case { ThetaSeries t; std::optional<Rational> q; std::vector<C> coeffs; };
  const std::vector<Case> cases{
      {series(4, 8, {{1, {{2, 1.0}}}}), Rational(1), {0.0, 1.0}},
      {series(4, 8, {{1, {{2, -1.0}}}}), Rational(1), {0.0, -1.0}},
      {series(4, 8, {{1, {{3, -1.0}}}}), Rational(3, 2), {0.0, -1.0}},
      {series(3, 8, {{0, {{2, 1.0}}}}), Rational(1), {1.0}},
      {series(3, 8, {}), std::nullopt, {0.0}},
  };
  for (const auto& cs : cases) {
    const auto inv = canonicalize(cs.t);
    c.expect(inv.m == cs.t.m, "type");
    c.expect(inv.q == cs.q, "q");
    for (std::size_t j = 0; j < cs.coeffs.size(); ++j) c.expect(inv.Q.coeff(static_cast<int>(j)) == cs.coeffs[j], "Q coefficient");
  }
}

void c8(Check& c) {
  const auto kx2 = poly(3, {-1.0});
  for (const auto& q : {kx2, poly(4, {0.0, -1.0}), poly(4, {-1.0, 0.5})}) {
    const auto f = squared_evaluator(q, 3.0);
    for (C z : {C(0.9, 0.6), C(-1.7, 2.1), C(2.5, -0.4)}) {
      const auto a = f(z), b = f(std::conj(z));
      c.expect(std::abs(a.log_mag - b.log_mag) < 1e-9 && std::abs(wrap(a.phase + b.phase)) < 1e-9, "conjugation");
    }
  }
  struct Rot { ExtendedPolynomial q; int k; };
  for (const auto& r : {Rot{kx2, 2}, Rot{poly(4, {-1.0}), 3}, Rot{poly(4, {0.0, -1.0}), 2}}) {
    const auto f = squared_evaluator(r.q, 2.5);
    const C rot = std::polar(1.0, 2.0 * kPi / r.k);
    for (C z : {C(0.9, 0.6), C(1.2, -1.9)}) c.expect(relative_difference(f(z), f(rot * z)) < 1e-8, "rotation");
  }

  const auto base = squared_zeros(kx2, make_rect(-1.5, 1.5, -1.5, 1.5));
  const auto scaled = squared_zeros(rescale_z(kx2, 2.0), make_rect(-0.75, 0.75, -0.75, 0.75));
  std::vector<C> halved;
  for (const auto& z : locations(base)) halved.push_back(z / 2.0);
  c.expect(multiset_distance(locations(scaled), halved) < 1e-6, "equivalence covariance");

  const auto q41 = two_term_family(4, 1);
  const auto red = shift_reduce(q41);
  const Rectangle box = make_rect(-2, 2, -2, 2);
  const auto direct = squared_zeros(q41, box), reduced = squared_zeros(red.reduced, box);
  c.expect(!direct.zeros.empty(), "shift covariance: no zeros");
  c.expect(multiset_distance(locations(direct), locations(reduced)) < 1e-6, "shift covariance");

  const auto f = memoized(squared_evaluator(kx2, 3.0), 1e-13);
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> ctr(-1.6, 1.6), half(0.1, 0.5), split(0.2, 0.8);
  int checked = 0;
  for (int i = 0; i < 50; ++i) {
    const double x0 = ctr(rng), y0 = ctr(rng), w = half(rng), h = half(rng);
    const double sx = x0 - w + 2 * w * split(rng), sy = y0 - h + 2 * h * split(rng);
    try {
      const int whole = winding_number(f, make_rect(x0 - w, x0 + w, y0 - h, y0 + h));
      const int parts = winding_number(f, make_rect(x0 - w, sx, y0 - h, sy)) + winding_number(f, make_rect(sx, x0 + w, y0 - h, sy)) +
                        winding_number(f, make_rect(x0 - w, sx, sy, y0 + h)) + winding_number(f, make_rect(sx, x0 + w, sy, y0 + h));
      c.expect(whole == parts, "winding additivity");
      ++checked;
    } catch (const Error& e) {
      c.expect(e.kind() == ErrorKind::BoundaryZero, std::string("winding: ") + e.what());
    }
  }
  c.expect(checked >= 45, "only " + std::to_string(checked) + " rectangles checked");
}

void c9(Check& c) {
  const auto lin = ExtendedPolynomial::monomial(2);
  const auto at0 = integrate_inward(lin, C(0, 0), seed(lin, C(0, 0), Side::plus, 8.0));
  const double expected = -2.0 * std::tgamma(0.75) / std::tgamma(0.25);
  const C got = at0.log_derivative();
  c.expect(std::abs(got - C(expected, 0)) < 1e-6, "psi'(0)/psi(0) = " + num(got.real()));
}

}  // namespace

int main() {
  struct Criterion { int id; const char* name; double budget_s; std::function<void(Check&)> run; };
  const std::vector<Criterion> all{
      {1, "m = 2 has no zeros and constant W", 10, c1},
      {2, "two-term instances have oracle-confirmed zeros", 300, c2},
      {3, "real-axis positivity", 30, c3},
      {4, "factored family", 120, c4},
      {5, "asymptotic exponent", 60, c5},
      {6, "growth order", 120, c6},
      {7, "canonical forms", 1, c7},
      {8, "symmetry and covariance", 300, c8},
      {9, "oscillator log-derivative", 1, c9},
  };
  int failed = 0;
  for (const auto& cr : all) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > cr.budget_s) c.failures.push_back("runtime " + num(dt) + " s over " + num(cr.budget_s) + " s");
    const bool ok = c.failures.empty();
    failed += !ok;
    std::printf("%s criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", cr.id, cr.name, dt);
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return failed;
}
