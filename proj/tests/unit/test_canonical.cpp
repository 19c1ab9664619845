// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "nlev/canonical.hpp"
#include "nlev/errors.hpp"

using namespace nlev;
using C = std::complex<double>;

namespace {

ThetaSeries series(int m, int N, std::map<int, std::map<int, double>> beta) {
  ThetaSeries t;
  t.m = m;
  t.truncation_order = N;
  t.beta = std::move(beta);
  return t;
}

}  // namespace

TEST_CASE("eliminate_beta_m2") {
  // (x - t/2)^2 + t (x - t/2) = x^2 - t^2/4
  const auto out = eliminate_beta_m2(series(3, 6, {{1, {{1, 1.0}}}}));
  CHECK(out.coeff(1, 1) == 0.0);
  CHECK(out.coeff(0, 2) == doctest::Approx(-0.25));
  CHECK(out.coeff(0, 1) == 0.0);

  const auto id = series(4, 5, {{1, {{2, 1.0}}}});
  CHECK(eliminate_beta_m2(id).beta == id.beta);
  const auto empty = series(3, 4, {});
  CHECK(eliminate_beta_m2(empty).beta.empty());
}

TEST_CASE("canonicalize") {
  SUBCASE("x^3 + t^2 x") {
    const auto inv = canonicalize(series(4, 6, {{1, {{2, 1.0}}}}));
    CHECK(inv.m == 4);
    REQUIRE(inv.q);
    CHECK(*inv.q == 1);
    CHECK(inv.Q == ExtendedPolynomial(4, std::vector<C>{0.0, 1.0, 0.0}));
  }
  SUBCASE("x^2") {
    const auto inv = canonicalize(series(3, 4, {}));
    CHECK(inv.q_infinite());
    CHECK(inv.conditional);
    CHECK(inv.Q.is_monomial());
  }
  SUBCASE("x^3 - t^3 x + t^5") {
    const auto inv = canonicalize(series(4, 8, {{1, {{3, -1.0}}}, {0, {{5, 1.0}}}}));
    REQUIRE(inv.q);
    CHECK(*inv.q == Rational(3, 2));
    CHECK(inv.Q.coeff(1) == C(-1, 0));
    CHECK(inv.Q.coeff(0) == C(0, 0));
    CHECK(inv.tau.at(0).order == 5);
    CHECK(inv.tau.at(1).order == 3);
    CHECK(*inv.p == Rational(10, 3));
  }
  SUBCASE("m = 2") {
    const auto inv = canonicalize(series(2, 3, {}));
    CHECK(inv.q_infinite());
    CHECK_FALSE(inv.conditional);
  }
  SUBCASE("truncation too short to certify q") {
    // beta_1 = t^2 gives q = 1 unless beta_0 is nonzero below order 3.
    CHECK_THROWS_AS(canonicalize(series(4, 2, {{1, {{2, 1.0}}}})), Error);
    try {
      canonicalize(series(4, 2, {{1, {{2, 1.0}}}}));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TruncationExhausted);
    }
  }
  SUBCASE("retained coefficients satisfy the order relation") {
    const auto inv = canonicalize(series(6, 12, {{0, {{10, 2.0}}}, {1, {{8, -1.0}}}, {2, {{7, 3.0}}}, {3, {{4, 0.5}}}}));
    REQUIRE(inv.q);
    CHECK(*inv.q == 2);
    for (int j = 0; j <= 3; ++j) {
      if (inv.Q.coeff(j) != C(0, 0)) CHECK(Rational(inv.tau.at(j).order) == Rational(5 - j) * *inv.q);
    }
    CHECK(inv.Q.coeff(2) == C(0, 0));
    CHECK(inv.Q.coeff(0) == C(2, 0));
  }
}

TEST_CASE("dilation invariance") {
  SUBCASE("integer q, all dilations") {
    const auto t = series(5, 10, {{0, {{8, 1.5}, {9, 2.0}}}, {1, {{6, -2.0}}}, {2, {{4, 0.75}, {5, 1.0}}}});
    const auto base = canonicalize(t);
    REQUIRE(base.q);
    CHECK(*base.q == 2);
    for (double lam : {2.0, 1.0 / 3.0, -1.0}) {
      const auto d = canonicalize(dilate(t, lam));
      CHECK(d.m == base.m);
      CHECK(*d.q == *base.q);
      CHECK(equivalent(base.Q, d.Q).has_value());
    }
  }
  SUBCASE("q = 3/2") {
    const auto t = series(5, 10, {{2, {{3, 0.75}}}, {1, {{6, -2.0}}}});
    const auto base = canonicalize(t);
    CHECK(*base.q == Rational(3, 2));
    for (double lam : {2.0, 1.0 / 3.0}) {
      const auto d = canonicalize(dilate(t, lam));
      CHECK(*d.q == *base.q);
      CHECK(equivalent(base.Q, d.Q).has_value());
    }
    // t -> -t flips c_2 z^2, which no real rescaling of z reproduces.
    const auto r = canonicalize(dilate(t, -1.0));
    CHECK(*r.q == *base.q);
    CHECK_FALSE(equivalent(base.Q, r.Q).has_value());
  }
}

TEST_CASE("eliminate then canonicalize chain") {
  const auto inv = canonicalize_prepared(series(3, 6, {{1, {{1, 1.0}}}}));
  REQUIRE(inv.q);
  CHECK(*inv.q == 1);
  const auto c = equivalent(inv.Q, ExtendedPolynomial(3, std::vector<C>{-1.0}));
  REQUIRE(c);
  CHECK(*c == doctest::Approx(2.0));
}

TEST_CASE("set_equivalence") {
  const std::vector<C> s{C(0, 1), C(0, -1)};
  CHECK(*set_equivalence(s, {C(0, 2), C(0, -2)}, 1e-12) == doctest::Approx(2.0));
  CHECK(*set_equivalence(s, s, 1e-12) == 1.0);
  CHECK_FALSE(set_equivalence({C(1, 1)}, {C(1, -2)}, 1e-12));
}

TEST_CASE("invalid series") {
  CHECK_THROWS_AS(series(3, 2, {{0, {{0, 1.0}}}}).validate(), Error);
  CHECK_THROWS_AS(series(3, 2, {{2, {{1, 1.0}}}}).validate(), Error);
  CHECK_THROWS_AS(series(3, 2, {{0, {{3, 1.0}}}}).validate(), Error);
}
