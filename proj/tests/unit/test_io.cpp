// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "doctest.h"
#include "nlev/errors.hpp"
#include "nlev/io.hpp"

using namespace nlev;
using C = std::complex<double>;

TEST_CASE("polynomial JSON") {
  const auto q = polynomial_from_json(json::parse(R"({"m": 4, "coeffs": [{"j": 1, "re": -1.0}, {"j": 0, "re": 0.5, "im": 2}]})"));
  CHECK(q.m() == 4);
  CHECK(q.coeff(1) == C(-1, 0));
  CHECK(q.coeff(0) == C(0.5, 2));
  CHECK(q.coeff(2) == C(0, 0));
  CHECK(polynomial_from_json(polynomial_to_json(q)) == q);
  CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"m": 3, "coeffs": [{"j": 2, "re": 1}]})")), Error);
  CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"m": 1})")), Error);
  CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"coeffs": []})")), Error);
}

TEST_CASE("theta JSON and invariants") {
  const auto t = theta_from_json(json::parse(R"({"m": 4, "truncation_order": 8, "beta": {"1": [[3, -1.0]], "0": [[5, 1.0]]}})"));
  CHECK(theta_from_json(theta_to_json(t)).beta == t.beta);
  const auto j = invariants_to_json(canonicalize_prepared(t));
  CHECK(j["q"]["num"] == 3);
  CHECK(j["q"]["den"] == 2);
  CHECK(j["p"]["num"] == 10);
  CHECK(j["m"] == 4);
  const auto inf = invariants_to_json(canonicalize_prepared(theta_from_json(json::parse(R"({"m": 3, "truncation_order": 3})"))));
  CHECK(inf["q"] == "inf");
  CHECK(inf["conditional"] == true);
  CHECK(inf["tau"]["0"] == ">=4");
  CHECK_THROWS_AS(theta_from_json(json::parse(R"({"m": 3, "truncation_order": 2, "beta": {"x": []}})")), Error);
}

TEST_CASE("config") {
  const auto c = config_from_json(json::parse(R"({"s_margin": 4, "quad_tol": 1e-10, "region": [-1, 1, -2, 2], "depth": 6})"));
  CHECK(c.ode.s_margin == 4.0);
  CHECK(c.quad.quad_tol == 1e-10);
  CHECK(c.search.max_depth == 6);
  CHECK(c.region.half_h == 2.0);
  CHECK(config_from_json(config_to_json(c)).region.half_w == 1.0);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"s_margin": -1})")), Error);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"region": [1, 0, 0, 1]})")), Error);
}

TEST_CASE("17 significant digits") {
  CHECK(fmt(0.1) == "0.10000000000000001");
  CHECK(std::stod(fmt(1.0 / 3.0)) == 1.0 / 3.0);
  std::ostringstream os;
  write_grid_csv(os, {GridPoint{C(0.1, -0.2), LogComplex{1.0 / 3.0, 0.5}}});
  CHECK(os.str() == "z_re,z_im,log_mag,phase\n0.10000000000000001,-0.20000000000000001,0.33333333333333331,0.5\n");
}

TEST_CASE("zero set JSON") {
  ZeroRecord r;
  r.location = C(0.5, 0.25);
  r.winding = 1;
  r.residual_logmag_drop = 20.0;
  r.box_radius = 1e-3;
  const auto j = zeros_to_json({r});
  REQUIRE(j.size() == 1);
  CHECK(j[0]["re"] == 0.5);
  CHECK(j[0]["im"] == 0.25);
  CHECK(j[0]["winding"] == 1);
  CHECK(j[0]["residual"] == 20.0);
  CHECK(j[0]["box_radius"] == 1e-3);
}
