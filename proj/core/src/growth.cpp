// SPDX-License-Identifier: Apache-2.0
#include "nlev/growth.hpp"

#include <array>
#include <cmath>
#include <string>

#include "nlev/errors.hpp"

namespace nlev {

namespace {

using cplx = std::complex<double>;

// Least squares y ~ sum_k coef_k basis_k(r); returns RMS residual.
template <std::size_t K>
double least_squares(const std::vector<std::array<double, K>>& rows, const std::vector<double>& y,
                     std::array<double, K>& coef) {
  std::array<std::array<double, K + 1>, K> a{};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t p = 0; p < K; ++p) {
      for (std::size_t q = 0; q < K; ++q) a[p][q] += rows[i][p] * rows[i][q];
      a[p][K] += rows[i][p] * y[i];
    }
  }
  for (std::size_t c = 0; c < K; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < K; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    if (a[c][c] == 0.0) throw Error(ErrorKind::InvalidInput, "degenerate least-squares fit");
    for (std::size_t r = 0; r < K; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t q = c; q <= K; ++q) a[r][q] -= f * a[c][q];
    }
  }
  for (std::size_t c = 0; c < K; ++c) coef[c] = a[c][K] / a[c][c];
  double ss = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double pred = 0.0;
    for (std::size_t p = 0; p < K; ++p) pred += coef[p] * rows[i][p];
    ss += (y[i] - pred) * (y[i] - pred);
  }
  return std::sqrt(ss / rows.size());
}

void check_samples(const std::vector<double>& r, const std::vector<double>& y) {
  if (r.size() != y.size() || r.size() < 5)
    throw Error(ErrorKind::InvalidInput, "growth fits need at least 5 samples");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || (i > 0 && !(r[i] > r[i - 1])))
      throw Error(ErrorKind::InvalidInput, "radii must be positive and increasing");
    if (!std::isfinite(y[i])) throw Error(ErrorKind::InvalidInput, "non-finite sample in growth fit");
  }
}

}  // namespace

std::string to_string(GrowthRegime r) {
  return r == GrowthRegime::exponential ? "exponential" : "polynomial";
}

RegimeFit fit_regimes(const std::vector<double>& r, const std::vector<double>& y, int m) {
  check_samples(r, y);
  std::vector<std::array<double, 2>> ex, po;
  for (double ri : r) {
    ex.push_back({1.0, std::pow(ri, m)});
    po.push_back({1.0, std::log(ri)});
  }
  RegimeFit fit;
  std::array<double, 2> c{};
  fit.exp_residual = least_squares(ex, y, c);
  fit.exp_intercept = c[0];
  fit.exp_coeff = c[1];
  fit.poly_residual = least_squares(po, y, c);
  fit.poly_intercept = c[0];
  fit.poly_power = c[1];
  fit.regime = fit.exp_residual < fit.poly_residual ? GrowthRegime::exponential
                                                    : GrowthRegime::polynomial;
  return fit;
}

OrderFit fit_growth_order(const std::vector<double>& r, const std::vector<double>& y,
                          double rho_min, double rho_max) {
  check_samples(r, y);
  auto fit_at = [&](double rho) {
    std::vector<std::array<double, 3>> rows;
    for (double ri : r) rows.push_back({1.0, std::log(ri), std::pow(ri, rho)});
    std::array<double, 3> c{};
    OrderFit f;
    f.residual = least_squares(rows, y, c);
    f.order = rho;
    f.intercept = c[0];
    f.log_coeff = c[1];
    f.coeff = c[2];
    return f;
  };
  OrderFit best = fit_at(rho_min);
  const int n = 400;
  for (int i = 1; i <= n; ++i) {
    const OrderFit f = fit_at(rho_min + (rho_max - rho_min) * i / n);
    if (f.residual < best.residual) best = f;
  }
  const double step = (rho_max - rho_min) / n;
  double a = std::max(rho_min, best.order - step), b = std::min(rho_max, best.order + step);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double c1 = b - g * (b - a), c2 = a + g * (b - a);
    if (fit_at(c1).residual < fit_at(c2).residual) b = c2; else a = c1;
  }
  const OrderFit polished = fit_at(0.5 * (a + b));
  return polished.residual <= best.residual ? polished : best;
}

RayProfile ray_profile(const Evaluator& w, double angle, const std::vector<double>& radii, int m) {
  if (radii.size() < 5) throw Error(ErrorKind::InvalidInput, "ray_profile needs at least 5 radii");
  RayProfile prof;
  prof.angle = angle;
  prof.radii = radii;
  for (double r : radii) prof.log_mag.push_back(w(std::polar(r, angle)).log_mag);
  prof.regimes = fit_regimes(radii, prof.log_mag, m);
  const OrderFit of = fit_growth_order(radii, prof.log_mag);
  prof.growth_order = of.order;
  prof.leading_coeff = of.coeff;
  prof.residual = of.residual;
  return prof;
}

ExtendedPolynomial two_term_family(int m, int k) {
  if (k < 1 || m - k - 1 < 0)
    throw Error(ErrorKind::InvalidInput, "two-term family needs 1 <= k <= m-1");
  std::map<int, cplx> c;
  c[m - k - 1] = -1.0;
  return ExtendedPolynomial(m, c);
}

GrowthReport growth_diagnostics(int m, int k, const std::vector<double>& zs, const OdeConfig& cfg) {
  const auto q = two_term_family(m, k);
  GrowthReport rep;
  std::vector<double> lp, ld;
  for (double z : zs) {
    if (!(z >= 1.0)) throw Error(ErrorKind::InvalidInput, "growth_diagnostics needs real z >= 1");
    const auto pr = recessive_at_origin(q, cplx(z, 0.0), min_seed_point(z, cfg), cfg);
    GrowthSample s{z, pr.plus.log_abs_psi(), pr.minus.log_abs_dpsi()};
    rep.samples.push_back(s);
    lp.push_back(s.log_psi_plus);
    ld.push_back(s.log_dpsi_minus);
  }
  rep.psi_plus = fit_regimes(zs, lp, m);
  rep.dpsi_minus = fit_regimes(zs, ld, m);
  return rep;
}

}  // namespace nlev
