// SPDX-License-Identifier: Apache-2.0
#include "nlev/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "nlev/errors.hpp"
#include "nlev/parallel.hpp"

namespace nlev {

using cplx = std::complex<double>;

namespace {

// Tridiagonal LU with partial pivoting (the LAPACK gttrf/gttrs layout).
struct TridiagonalLU {
  std::vector<cplx> dl, d, du, du2;
  std::vector<char> swapped;

  TridiagonalLU(std::vector<cplx> lower, std::vector<cplx> diag, std::vector<cplx> upper)
      : dl(std::move(lower)), d(std::move(diag)), du(std::move(upper)) {
    const std::size_t n = d.size();
    du2.assign(n > 2 ? n - 2 : 0, cplx(0.0, 0.0));
    swapped.assign(n > 1 ? n - 1 : 0, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] != cplx(0.0, 0.0)) {
          const cplx f = dl[i] / d[i];
          dl[i] = f;
          d[i + 1] -= f * du[i];
        }
      } else {
        const cplx f = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = f;
        const cplx t = du[i];
        du[i] = d[i + 1];
        d[i + 1] = t - f * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -f * du[i + 1];
        }
        swapped[i] = 1;
      }
    }
  }

  void solve(std::vector<cplx>& b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const cplx t = b[i];
        b[i] = b[i + 1];
        b[i + 1] = t - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t k = n - 2; k-- > 0;) b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
  }
};

double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

FDGrid fd_grid_for(const ExtendedPolynomial& q, double z_max, int n) {
  const int m = q.m();
  FDGrid g;
  g.n = n;
  g.L = std::max(2.0 * (1.0 + z_max), std::pow(60.0 * m, 1.0 / m));
  return g;
}

double fd_indicator(const ExtendedPolynomial& q, cplx z, const FDGrid& grid) {
  if (grid.n < 200) throw Error(ErrorKind::InvalidInput, "finite-difference grid needs n >= 200");
  const int n = grid.n;
  const double h = grid.h();
  const double off = -1.0 / (h * h);
  std::vector<cplx> diag(n), lower(n - 1, cplx(off, 0.0)), upper(n - 1, cplx(off, 0.0));
  for (int i = 0; i < n; ++i) {
    const cplx qv = q.eval(-grid.L + (i + 1) * h, z);
    diag[i] = 2.0 / (h * h) + qv * qv;
  }
  const TridiagonalLU lu(lower, diag, upper);

  // Inverse iteration on A^H A. A is complex symmetric, so A^H = conj(A).
  std::vector<cplx> v(n);
  for (int i = 0; i < n; ++i) v[i] = cplx(1.0 + 0.5 * std::sin(0.37 * i), 0.25 * std::cos(0.11 * i));
  double nv = norm2(v);
  for (auto& x : v) x /= nv;
  double est = 0.0;
  for (int it = 0; it < 60; ++it) {
    for (auto& x : v) x = std::conj(x);
    lu.solve(v);
    for (auto& x : v) x = std::conj(x);
    lu.solve(v);
    nv = norm2(v);
    if (!std::isfinite(nv) || nv == 0.0) return 0.0;
    const double next = 1.0 / std::sqrt(nv);
    for (auto& x : v) x /= nv;
    if (it > 2 && std::abs(next - est) <= 1e-12 * next) {
      est = next;
      break;
    }
    est = next;
  }
  return est;
}

cplx fd_minimize(const ExtendedPolynomial& q, cplx start, double radius, const FDGrid& grid) {
  auto f = [&](cplx z) { return std::log(fd_indicator(q, z, grid) + 1e-300); };
  std::array<cplx, 3> s = {start, start + cplx(radius, 0.0), start + cplx(0.0, radius)};
  std::array<double, 3> fs = {f(s[0]), f(s[1]), f(s[2])};
  for (int it = 0; it < 300; ++it) {
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    const int b = idx[0], g = idx[1], w = idx[2];
    const double size = std::max(std::abs(s[g] - s[b]), std::abs(s[w] - s[b]));
    if (size < 1e-10 * (1.0 + std::abs(s[b]))) break;
    const cplx mid = 0.5 * (s[b] + s[g]);
    const cplx r = mid + (mid - s[w]);
    const double fr = f(r);
    if (fr < fs[b]) {
      const cplx e = mid + 2.0 * (mid - s[w]);
      const double fe = f(e);
      if (fe < fr) { s[w] = e; fs[w] = fe; } else { s[w] = r; fs[w] = fr; }
    } else if (fr < fs[g]) {
      s[w] = r;
      fs[w] = fr;
    } else {
      const cplx c = mid + 0.5 * (s[w] - mid);
      const double fc = f(c);
      if (fc < fs[w]) {
        s[w] = c;
        fs[w] = fc;
      } else {
        s[g] = s[b] + 0.5 * (s[g] - s[b]);
        s[w] = s[b] + 0.5 * (s[w] - s[b]);
        fs[g] = f(s[g]);
        fs[w] = f(s[w]);
      }
    }
  }
  const int best = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  return s[best];
}

FDScan fd_pencil_scan(const ExtendedPolynomial& q, const Rectangle& region, int steps_re,
                      int steps_im, FDGrid grid) {
  if (steps_re < 2 || steps_im < 2) throw Error(ErrorKind::InvalidInput, "scan needs at least 2 steps per axis");
  if (grid.L <= 0.0) grid = fd_grid_for(q, region.max_abs(), grid.n);
  FDScan scan;
  scan.grid = grid;
  scan.steps_re = steps_re;
  scan.steps_im = steps_im;
  const int nx = steps_re + 1, ny = steps_im + 1;
  scan.samples.resize(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      scan.samples[j * nx + i].z = cplx(region.lo_re() + 2.0 * region.half_w * i / steps_re,
                                        region.lo_im() + 2.0 * region.half_h * j / steps_im);
  parallel_for(scan.samples.size(), [&](std::size_t k) {
    scan.samples[k].indicator = fd_indicator(q, scan.samples[k].z, grid);
  });

  std::vector<cplx> starts;
  for (int j = 1; j + 1 < ny; ++j) {
    for (int i = 1; i + 1 < nx; ++i) {
      const double c = scan.samples[j * nx + i].indicator;
      bool is_min = true;
      for (int dj = -1; dj <= 1 && is_min; ++dj)
        for (int di = -1; di <= 1; ++di)
          if ((di || dj) && scan.samples[(j + dj) * nx + i + di].indicator <= c) {
            is_min = false;
            break;
          }
      if (is_min) starts.push_back(scan.samples[j * nx + i].z);
    }
  }
  const double step = std::min(2.0 * region.half_w / steps_re, 2.0 * region.half_h / steps_im);
  scan.minima.resize(starts.size());
  parallel_for(starts.size(), [&](std::size_t k) { scan.minima[k] = fd_minimize(q, starts[k], 0.5 * step, grid); });
  return scan;
}

LogComplex quad_oracle_factored(const ExtendedPolynomial& q, cplx z) {
  const int m = q.m();
  if (m % 2 != 0) throw Error(ErrorKind::InvalidInput, "quad_oracle_factored needs m even");
  // |coefficient| of x^j in Q(x, z); Re Q(x) > 0 for x > R0 and < 0 for x < -R0.
  std::vector<double> a(m - 1);
  double R0 = 1.0;
  for (int j = 0; j <= m - 2; ++j) {
    a[j] = std::abs(q.coeff(j)) * std::pow(std::abs(z), m - 1 - j);
    R0 = std::max(R0, 1.0 + a[j]);
  }
  auto two_re_p = [&](double x) { return 2.0 * q.eval_antiderivative(x, z).real(); };
  double S = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 4000; ++i) S = std::min(S, two_re_p(-R0 + 2.0 * R0 * i / 4000));

  // Lower bound 2 Re P(x) >= B(|x|), increasing beyond R0.
  auto bound = [&](double r) {
    double b = std::pow(r, m) / m;
    for (int j = 0; j <= m - 2; ++j) b -= a[j] * std::pow(r, j + 1) / (j + 1);
    return 2.0 * b;
  };
  double X = R0;
  while (bound(X) - S < 60.0) X *= 1.25;

  auto f = [&](double x) { return std::exp(-2.0 * q.eval_antiderivative(x, z) + S); };
  int n = 64;
  double h = 2.0 * X / n;
  cplx sum = 0.5 * (f(-X) + f(X));
  double abs_sum = 0.5 * (std::abs(f(-X)) + std::abs(f(X)));
  for (int k = 1; k < n; ++k) {
    const cplx v = f(-X + k * h);
    sum += v;
    abs_sum += std::abs(v);
  }
  cplx prev = sum * h;
  for (int level = 0; level < 22; ++level) {
    // Halve the step: add the midpoints.
    for (int k = 0; k < n; ++k) {
      const cplx v = f(-X + (k + 0.5) * h);
      sum += v;
      abs_sum += std::abs(v);
    }
    n *= 2;
    h *= 0.5;
    const cplx cur = sum * h;
    if (std::abs(cur - prev) <= 1e-14 * abs_sum * h) {
      prev = cur;
      break;
    }
    prev = cur;
  }
  LogComplex out = LogComplex::from_complex(prev);
  if (!out.is_zero()) out.log_mag -= S;
  return out;
}

}  // namespace nlev
