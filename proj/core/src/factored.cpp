// SPDX-License-Identifier: Apache-2.0
#include "nlev/factored.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "nlev/errors.hpp"
#include "nlev/quadrature.hpp"
#include "nlev/real_roots.hpp"

namespace nlev {

namespace {

using cplx = std::complex<double>;

void require_even_m(const ExtendedPolynomial& q, const char* who) {
  if (q.m() % 2 != 0) {
    throw Error(ErrorKind::InvalidInput,
                std::string(who) + " needs Q of odd degree (m even), got m=" + std::to_string(q.m()));
  }
}

struct Window {
  double lo;
  double hi;
  double shift;  // min of 2 Re P over the domain
};

// Window for exp(-2 P(x, z)) on (-inf, upper]: outside [lo, hi] the exponent
// 2 Re P exceeds its minimum by at least lambda.
Window find_window(const Antiderivative& P, const std::vector<cplx>& qx, cplx z, double lambda,
                   std::optional<double> upper) {
  auto g = [&](double x) { return 2.0 * P.eval(cplx(x, 0.0), z).real(); };

  // Beyond B, Re Q(x, z) has the sign of x^{m-1}, so g is monotone there.
  double B = 1.0;
  for (std::size_t i = 0; i + 1 < qx.size(); ++i) B = std::max(B, 1.0 + std::abs(qx[i].real()));

  const double right = upper ? std::min(*upper, B) : B;
  const double left = upper ? std::min(-B, *upper) : -B;
  constexpr int kGrid = 2048;
  std::vector<double> xs(kGrid + 1), gs(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) {
    xs[i] = left + (right - left) * i / kGrid;
    gs[i] = g(xs[i]);
  }
  int best = static_cast<int>(std::min_element(gs.begin(), gs.end()) - gs.begin());

  // Golden-section polish inside the bracketing grid cells.
  double a = xs[std::max(best - 1, 0)], b = xs[std::min(best + 1, kGrid)];
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
    const double c = b - phi * (b - a), d = a + phi * (b - a);
    if (g(c) < g(d)) b = d; else a = c;
  }
  double shift = std::min(gs[best], g(0.5 * (a + b)));
  if (!std::isfinite(shift)) throw Error(ErrorKind::QuadratureFail, "non-finite exponent");

  const double h = (right - left) / kGrid;
  int first = -1, last = -1;
  for (int i = 0; i <= kGrid; ++i) {
    if (gs[i] - shift < lambda) {
      if (first < 0) first = i;
      last = i;
    }
  }
  double lo = xs[first] - h;
  double hi = upper ? std::min(xs[last] + h, *upper) : xs[last] + h;

  // Extend past the monotone tails if the cut is not reached inside [-B, B].
  auto extend = [&](double from, double dir) {
    double step = 1.0;
    double x = from;
    while (g(x) - shift < lambda) {
      x += dir * step;
      step *= 2.0;
      if (step > 1e6) throw Error(ErrorKind::QuadratureFail, "window search diverged");
    }
    double inner = from, outer = x;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (inner + outer);
      if (g(mid) - shift < lambda) inner = mid; else outer = mid;
    }
    return outer;
  };
  if (first == 0 && g(left) - shift < lambda) lo = extend(left, -1.0);
  if (!upper && last == kGrid && g(right) - shift < lambda) hi = extend(right, 1.0);
  return {lo, hi, shift};
}

LogComplex integrate_window(const Antiderivative& P, cplx z, const Window& w, double tol) {
  if (w.hi <= w.lo) return LogComplex::zero();
  auto f = [&](double x) { return std::exp(-2.0 * P.eval(cplx(x, 0.0), z) + w.shift); };
  const auto r = integrate_gk15(f, w.lo, w.hi, tol, 32, 200000);
  LogComplex out = LogComplex::from_complex(r.value);
  if (!out.is_zero()) out.log_mag -= w.shift;
  return out;
}

}  // namespace

FactoredValue factored_psi_minus(const ExtendedPolynomial& q, cplx z, double x,
                                 const QuadConfig& cfg) {
  require_even_m(q, "factored_psi_minus");
  const auto P = antiderivative(q);
  const auto qx = q.x_coefficients(z);
  const Window w = find_window(P, qx, z, cfg.lambda_cut, x);
  const LogComplex integral = integrate_window(P, z, w, cfg.quad_tol);
  const cplx Px = P.eval(cplx(x, 0.0), z);
  FactoredValue out;
  out.psi = integral * LogComplex::from_exponent(Px);
  // psi' = Q psi + exp(-P)
  out.dpsi = out.psi * LogComplex::from_complex(q.eval(x, z)) + LogComplex::from_exponent(-Px);
  return out;
}

LogComplex wronskian_factored(const ExtendedPolynomial& q, cplx z, const QuadConfig& cfg) {
  require_even_m(q, "wronskian_factored");
  const auto P = antiderivative(q);
  const Window w = find_window(P, q.x_coefficients(z), z, cfg.lambda_cut, std::nullopt);
  return integrate_window(P, z, w, cfg.quad_tol);
}

AsymptoticProfile stationary_phase_profile(const ExtendedPolynomial& q) {
  require_even_m(q, "stationary_phase_profile");
  if (!q.is_real()) throw Error(ErrorKind::InvalidInput, "stationary_phase_profile needs real coefficients");
  const int m = q.m();
  std::vector<Rational> coeffs;
  for (int j = 0; j <= m - 2; ++j) coeffs.push_back(exact_rational(q.coeff(j).real()));
  coeffs.emplace_back(1);

  const auto roots = real_roots(coeffs);
  if (roots.empty()) throw Error(ErrorKind::RootFindingFail, "odd-degree Q(., 1) without real roots");

  std::vector<double> values;
  for (const auto& r : roots) values.push_back(-q.eval_antiderivative(r.value, cplx(1.0, 0.0)).real());
  const double eta = *std::max_element(values.begin(), values.end());

  AsymptoticProfile prof;
  prof.eta = eta;
  const double tie = 1e-9 * std::max(1.0, std::abs(eta));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (eta - values[i] <= tie) {
      prof.maximizers.push_back(roots[i].value);
      prof.orders.push_back(roots[i].multiplicity + 1);
    }
  }
  prof.k = *std::max_element(prof.orders.begin(), prof.orders.end());
  prof.exponent = 1.0 - static_cast<double>(m) / prof.k;
  return prof;
}

}  // namespace nlev
