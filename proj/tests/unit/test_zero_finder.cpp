// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "nlev/errors.hpp"
#include "nlev/evaluator.hpp"
#include "nlev/growth.hpp"
#include "nlev/oracle.hpp"
#include "nlev/zero_finder.hpp"

using namespace nlev;
using C = std::complex<double>;

namespace {

ExtendedPolynomial poly(int m, std::vector<C> c) { return ExtendedPolynomial(m, std::move(c)); }

const ExtendedPolynomial kX2 = poly(3, {-1.0});

std::vector<C> locations(const ZeroSet& zs) {
  std::vector<C> out;
  for (const auto& z : zs.zeros) out.push_back(z.location);
  return out;
}

// Every point of `a` has a distinct partner in `b` within tol.
bool same_multiset(std::vector<C> a, std::vector<C> b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& x : a) {
    bool hit = false;
    for (std::size_t i = 0; i < b.size() && !hit; ++i) {
      if (!used[i] && std::abs(b[i] - x) <= tol) used[i] = hit = true;
    }
    if (!hit) return false;
  }
  return true;
}

const ZeroSet& x2_zeros() {
  static const ZeroSet zs = squared_zeros(kX2, make_rect(-1.5, 1.5, -1.5, 1.5));
  return zs;
}

}  // namespace

TEST_CASE("winding_number") {
  const auto lin = squared_evaluator(ExtendedPolynomial::monomial(2), 4.3);
  CHECK(winding_number(lin, make_rect(1, 3, 1, 3)) == 0);

  const auto f = squared_evaluator(kX2, 2.7);
  const auto box = make_rect(0.7, 1.0, 0.5, 0.7);
  CHECK(winding_number(f, box) >= 1);
  for (const auto& r : {box, make_rect(-1.6, 0.3, 0.2, 1.4), make_rect(0.1, 1.9, -1.9, -0.2)})
    CHECK(winding_number(f, r) == winding_number(f, r.conj()));
}

TEST_CASE("fast phase rotation along an edge") {
  // Phase turns about 30 rad per unit along Re z = 2.26.
  const auto f = squared_evaluator(kX2, 3.4);
  const double s = 2.2627;
  const int whole = winding_number(f, make_rect(0, s, 0, s));
  CHECK(whole == 8);
  CHECK(whole == winding_number(f, make_rect(0, s / 2, 0, s / 2)) + winding_number(f, make_rect(s / 2, s, 0, s / 2)) +
                     winding_number(f, make_rect(0, s / 2, s / 2, s)) + winding_number(f, make_rect(s / 2, s, s / 2, s)));
}

TEST_CASE("winding additivity") {
  const auto f = memoized(squared_evaluator(kX2, 3.0), 1e-13);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> c(-1.6, 1.6), h(0.1, 0.5), split(0.2, 0.8);
  for (int i = 0; i < 10; ++i) {
    const double x0 = c(rng), y0 = c(rng), w = h(rng), hh = h(rng);
    const double sx = x0 - w + 2 * w * split(rng), sy = y0 - hh + 2 * hh * split(rng);
    const Rectangle parent = make_rect(x0 - w, x0 + w, y0 - hh, y0 + hh);
    try {
      const int whole = winding_number(f, parent);
      const int parts = winding_number(f, make_rect(x0 - w, sx, y0 - hh, sy)) +
                        winding_number(f, make_rect(sx, x0 + w, y0 - hh, sy)) +
                        winding_number(f, make_rect(x0 - w, sx, sy, y0 + hh)) +
                        winding_number(f, make_rect(sx, x0 + w, sy, y0 + hh));
      CHECK(whole == parts);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BoundaryZero);
    }
  }
}

TEST_CASE("prefactor stability") {
  OdeConfig wide;
  wide.s_margin = 3.9;
  const auto f = squared_evaluator(kX2, 2.9), g = squared_evaluator(kX2, 2.9, wide);
  for (const auto& r : {make_rect(-2, 2, -2, 2), make_rect(0.5, 1.5, 0.2, 1.2), make_rect(-1, 1, -0.5, 0.5)})
    CHECK(winding_number(f, r) == winding_number(g, r));
}

TEST_CASE("locate_zeros") {
  SUBCASE("m = 2 has no zeros") {
    const auto zs = squared_zeros(ExtendedPolynomial::monomial(2), make_rect(-3, 3, -3, 3));
    CHECK(zs.zeros.empty());
    CHECK(zs.total_winding == 0);
  }
  SUBCASE("x^2 - z^2") {
    const auto& zs = x2_zeros();
    REQUIRE(zs.zeros.size() == 8);
    CHECK(zs.unresolved.empty());
    const auto locs = locations(zs);
    std::vector<C> conj, neg;
    for (const auto& z : locs) {
      conj.push_back(std::conj(z));
      neg.push_back(-z);
    }
    CHECK(same_multiset(locs, conj, 1e-8));
    CHECK(same_multiset(locs, neg, 1e-8));
    for (const auto& z : zs.zeros) {
      CHECK(std::abs(z.location.imag()) > 0.1);
      CHECK(z.winding == 1);
      CHECK(z.residual_logmag_drop >= 12.0);
    }
    for (std::size_t i = 0; i < locs.size(); ++i)
      for (std::size_t j = i + 1; j < locs.size(); ++j) CHECK(std::abs(locs[i] - locs[j]) > 1e-3);
  }
}

TEST_CASE("refine_zero") {
  const auto f = squared_evaluator(kX2, 2.0);
  const C guess(0.865, 0.61);
  const auto rec = refine_zero(f, guess, 1e-2);
  CHECK(rec.residual_logmag_drop >= 12.0);
  const auto again = refine_zero(f, rec.location, 1e-3);
  CHECK(std::abs(again.location - rec.location) < 1e-10);

  bool failed = false;
  try {
    const auto r = refine_zero(f, C(0.9, 0.0), 0.05);
    failed = std::abs(r.location - C(0.9, 0.0)) > 0.2 || r.residual_logmag_drop < 12.0;
  } catch (const Error& e) {
    failed = e.kind() == ErrorKind::NoConvergence;
  }
  CHECK(failed);
}

TEST_CASE("curlyW_zeros") {
  SUBCASE("k = 1 matches the z-plane search") {
    const auto rect = make_rect(-2, 2, -2, 2);
    const auto a = curlyW_zeros(3, 1, rect);
    const auto b = squared_zeros(two_term_family(3, 1), rect);
    CHECK(same_multiset(locations(a), locations(b), 1e-10));
    CHECK(!a.zeros.empty());
  }
  SUBCASE("(3, 2): zeta-zeros are squares of z-zeros") {
    const auto zeta = curlyW_zeros(3, 2, make_rect(-1.5, 1.5, -1.5, 1.5));
    std::vector<C> squares;
    for (const auto& z : x2_zeros().zeros) {
      const C s = z.location * z.location;
      if (std::abs(s.real()) < 1.5 && std::abs(s.imag()) < 1.5 &&
          std::none_of(squares.begin(), squares.end(), [&](C t) { return std::abs(t - s) < 1e-6; }))
        squares.push_back(s);
    }
    REQUIRE(!squares.empty());
    CHECK(same_multiset(locations(zeta), squares, 1e-6));
  }
  SUBCASE("root choice independence") {
    const auto f = squared_evaluator(kX2, 2.0);
    for (C zeta : {C(0.4, 1.0), C(-1.2, 0.3), C(2.0, -0.7)}) {
      const C r = std::sqrt(zeta);
      CHECK(relative_difference(f(r), f(-r)) < 1e-8);
    }
  }
}

TEST_CASE("prop17_expected") {
  const auto a = prop17_expected(3, 2);
  CHECK(a.expected);
  CHECK(a.reasons == std::vector<std::string>{"m odd", "k even", "m/k not an integer"});
  const auto b = prop17_expected(4, 3);
  CHECK(b.expected);
  CHECK(b.reasons == std::vector<std::string>{"m divisible by 4", "m/k not an integer"});
  const auto c = prop17_expected(6, 3);
  CHECK_FALSE(c.expected);
  CHECK(c.reasons.empty());
  CHECK(!c.note.empty());
}

TEST_CASE("factored family zeros") {
  const auto q = poly(4, {0.0, -1.0});
  const auto f = factored_evaluator(q);
  const auto zs = locate_zeros(f, make_rect(1.2, 2.2, 0.3, 1.2));
  REQUIRE(!zs.zeros.empty());
  const C z = zs.zeros.front().location;
  CHECK(zs.zeros.front().residual_logmag_drop >= 12.0);
  // A zero of W makes psi- recessive at +inf as well. Past x = 3 the value is
  // below the cancellation floor of int_{-inf}^x exp(-2P).
  const double a = factored_psi_minus(q, z, 2.0).psi.log_mag, b = factored_psi_minus(q, z, 2.5).psi.log_mag,
               c = factored_psi_minus(q, z, 3.0).psi.log_mag;
  CHECK(b < a);
  CHECK(c < b);
}
