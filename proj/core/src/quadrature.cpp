// SPDX-License-Identifier: Apache-2.0
#include "nlev/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "nlev/errors.hpp"

namespace nlev {

namespace {

using cplx = std::complex<double>;

// Kronrod nodes (positive half) and weights; Gauss weights on the odd nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx value;
  double error;
  double abs_value;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx kron = fc * kWgk[7];
  cplx gauss = fc * kWg[3];
  double absk = std::abs(fc) * kWgk[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const cplx f1 = f(c - dx);
    const cplx f2 = f(c + dx);
    kron += kWgk[i] * (f1 + f2);
    absk += kWgk[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h), absk * std::abs(h)};
}

}  // namespace

QuadratureResult integrate_gk15(const std::function<cplx(double)>& f, double a, double b,
                                double rel_tol, int initial_panels, int max_intervals,
                                double noise_floor) {
  std::priority_queue<Panel> heap;
  const int n0 = std::max(initial_panels, 1);
  for (int i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * i / n0;
    const double hi = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
    heap.push(gk15(f, lo, hi));
  }

  auto totals = [&heap]() {
    // Deterministic summation: copy out and sort by left endpoint.
    std::vector<Panel> panels;
    auto copy = heap;
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    QuadratureResult r{};
    for (const auto& p : panels) {
      r.value += p.value;
      r.error += p.error;
      r.abs_integral += p.abs_value;
    }
    r.intervals = static_cast<int>(panels.size());
    return r;
  };

  double err = 0.0, absint = 0.0;
  cplx val(0.0, 0.0);
  {
    auto copy = heap;
    while (!copy.empty()) {
      err += copy.top().error;
      absint += copy.top().abs_value;
      val += copy.top().value;
      copy.pop();
    }
  }
  while (true) {
    const double target = std::max(rel_tol * std::abs(val), noise_floor * absint);
    if (err <= target) return totals();
    if (static_cast<int>(heap.size()) >= max_intervals) {
      throw Error(ErrorKind::QuadratureFail,
                  "error estimate " + std::to_string(err) + " above target " +
                      std::to_string(target) + " after " + std::to_string(heap.size()) +
                      " intervals");
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    err += left.error + right.error - worst.error;
    absint += left.abs_value + right.abs_value - worst.abs_value;
    val += left.value + right.value - worst.value;
    heap.push(left);
    heap.push(right);
    if (err < 0.0) err = 0.0;
  }
}

}  // namespace nlev
