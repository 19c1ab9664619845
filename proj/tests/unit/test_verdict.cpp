// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "nlev/io.hpp"
#include "nlev/verdict.hpp"

using namespace nlev;
using C = std::complex<double>;

namespace {

ExtendedPolynomial poly(int m, std::vector<C> c) { return ExtendedPolynomial(m, std::move(c)); }

ThetaSeries series(int m, int N, std::map<int, std::map<int, double>> beta) {
  ThetaSeries t;
  t.m = m;
  t.truncation_order = N;
  t.beta = std::move(beta);
  return t;
}

VerdictConfig small(double r) {
  VerdictConfig c;
  c.region = make_rect(-r, r, -r, r);
  return c;
}

}  // namespace

TEST_CASE("verdict") {
  SUBCASE("x^2 is hypoelliptic") {
    const auto v = verdict(series(3, 6, {}));
    CHECK(v.classification == Classification::hypoelliptic);
    CHECK(v.evidence_note.find("conditional") != std::string::npos);
    CHECK_FALSE(v.searched_region);
  }
  SUBCASE("x^2 + t^2 is not hypoelliptic") {
    const auto v = verdict(series(3, 6, {{0, {{2, 1.0}}}}), small(1.2));
    CHECK(v.classification == Classification::not_hypoelliptic);
    REQUIRE(!v.evidence.empty());
    for (const auto& e : v.evidence) {
      CHECK(e.oracle_confirmed);
      CHECK(e.zero.residual_logmag_drop >= 12.0);
      // x^2 + z^2 has the zeros of x^2 - z^2 rotated by i.
      CHECK(std::abs(std::abs(e.zero.location) - std::abs(C(0.870243656411, 0.603088815800))) < 1e-8);
    }
  }
  SUBCASE("tiny region stays unknown") {
    const auto v = verdict(poly(4, {0.0, 1.0}), small(0.5));
    CHECK(v.classification == Classification::unknown);
    REQUIRE(v.searched_region);
    CHECK(v.searched_region->half_w >= 0.5);
    CHECK(v.evidence.empty());
  }
  SUBCASE("enlarging the region keeps a positive verdict") {
    const auto q = poly(3, {-1.0});
    const auto a = verdict(q, small(1.2)), b = verdict(q, small(1.6));
    CHECK(a.classification == Classification::not_hypoelliptic);
    CHECK(b.classification == Classification::not_hypoelliptic);
  }
  SUBCASE("evidence is reproducible") {
    const auto v = verdict(poly(3, {-1.0}), small(1.2));
    REQUIRE(!v.evidence.empty());
    const auto f = squared_evaluator(v.Q, small(1.2).region.inflated(std::pow(1.03, 5)).max_abs());
    for (const auto& e : v.evidence) {
      const auto again = refine_zero(f, e.zero.location, 1e-3);
      CHECK(std::abs(again.location - e.zero.location) < 1e-8);
    }
  }
  SUBCASE("non-reduced input is shifted") {
    const auto v = verdict(poly(4, {0.0, 0.0, -1.0}), small(0.5));
    REQUIRE(v.shift);
    CHECK(std::abs(v.Q.coeff(2)) < 1e-15);
  }
}

TEST_CASE("wronskian_grid") {
  SUBCASE("Q = x") {
    const auto g = wronskian_grid(ExtendedPolynomial::monomial(2), make_rect(-1, 1, -1, 1), 3, 3, Family::squared);
    for (const auto& p : g) CHECK(std::abs(p.w.log_mag - g.front().w.log_mag) < 1e-8);
  }
  SUBCASE("x^2 - z^2: conjugate rows and real row") {
    const int n = 7;
    const auto g = wronskian_grid(poly(3, {-1.0}), make_rect(-1.5, 1.5, -1.5, 1.5), n, n, Family::squared);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const auto& a = g[j * n + i];
        const auto& b = g[(n - 1 - j) * n + i];
        CHECK(std::abs(a.w.principal_phase() + b.w.principal_phase()) < 1e-6);
      }
    for (int i = 0; i < n; ++i) CHECK(std::abs(g[(n / 2) * n + i].w.principal_phase()) < 1e-6);
  }
  SUBCASE("CSV output is deterministic") {
    const auto q = poly(4, {0.0, -1.0});
    std::ostringstream a, b;
    write_grid_csv(a, wronskian_grid(q, make_rect(-1, 1, -1, 1), 9, 9, Family::squared));
    write_grid_csv(b, wronskian_grid(q, make_rect(-1, 1, -1, 1), 9, 9, Family::squared));
    CHECK(a.str() == b.str());
    std::ostringstream c, d;
    write_grid_csv(c, wronskian_grid(q, make_rect(-1, 1, -1, 1), 9, 9, Family::factored));
    write_grid_csv(d, wronskian_grid(q, make_rect(-1, 1, -1, 1), 9, 9, Family::factored));
    CHECK(c.str() == d.str());
  }
}

TEST_CASE("asymptotics_report") {
  const auto a = asymptotics_report(poly(4, {0.0, -1.0}));
  CHECK(a.predicted_exponent == -1.0);
  CHECK(a.fitted_exponent == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(a.agrees);
  const auto b = asymptotics_report(ExtendedPolynomial::monomial(4));
  CHECK(b.predicted_exponent == 0.0);
  CHECK(std::abs(b.fitted_exponent) < 1e-9);
  const auto c = asymptotics_report(poly(4, {-1.0}));
  CHECK(c.profile.eta == doctest::Approx(0.75));
  CHECK(c.fitted_exponent == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("sweep_family") {
  SweepConfig cfg;
  cfg.region = make_rect(0.0, 1.6, 0.0, 1.6);
  cfg.tracking_radius = 0.6;
  SUBCASE("x^2 - zeta z^2 scales like zeta^{-1/2}") {
    PolynomialFamily fam{3, {{0, {C(0, 0), C(-1, 0)}}}};
    const std::vector<C> zetas{C(1.21, 0), C(1.1, 0), C(1, 0), C(0.9, 0)};
    const auto res = sweep_family(fam, zetas, cfg);
    const C z1(0.870243656411, 0.603088815800);
    const Trajectory* track = nullptr;
    for (const auto& t : res.trajectories)
      if (t.points[2] && std::abs(*t.points[2] - z1) < 1e-8) track = &t;
    REQUIRE(track);
    CHECK_FALSE(track->lost_at);
    for (std::size_t s = 0; s < zetas.size(); ++s) {
      REQUIRE(track->points[s]);
      CHECK(std::abs(*track->points[s] - *track->points[2] / std::sqrt(zetas[s])) < 1e-6);
    }
  }
  SUBCASE("constant family") {
    PolynomialFamily fam{3, {{0, {C(-1, 0)}}}};
    const auto res = sweep_family(fam, {C(0, 0), C(1, 0), C(2, 0)}, cfg);
    REQUIRE(!res.trajectories.empty());
    for (const auto& t : res.trajectories) {
      CHECK_FALSE(t.lost_at);
      for (const auto& p : t.points) CHECK(std::abs(*p - *t.points[0]) == 0.0);
    }
  }
  SUBCASE("zeta -> 0 pushes zeros out of the region") {
    PolynomialFamily fam{3, {{0, {C(0, 0), C(-1, 0)}}}};
    const auto res = sweep_family(fam, {C(1, 0), C(0.25, 0), C(0.1, 0)}, cfg);
    bool lost = false;
    for (const auto& t : res.trajectories) lost = lost || t.lost_at.has_value();
    CHECK(lost);
    bool noted = false;
    for (const auto& n : res.notes) noted = noted || n.find("TrackLost") != std::string::npos;
    CHECK(noted);
  }
}
