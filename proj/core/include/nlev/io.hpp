// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlev/canonical.hpp"
#include "nlev/factored.hpp"
#include "nlev/oracle.hpp"
#include "nlev/polynomial.hpp"
#include "nlev/recessive.hpp"
#include "nlev/verdict.hpp"
#include "nlev/zero_finder.hpp"

namespace nlev {

using json = nlohmann::json;

/// Tolerances and search policy, read from a JSON config file. Every key is
/// optional:
///   s_margin, error_target, quad_tol, lambda_cut, phase_step_max,
///   region [re0, re1, im0, im1], depth, target_radius
struct Config {
  OdeConfig ode;
  QuadConfig quad;
  SearchOptions search;
  Rectangle region = make_rect(-4.0, 4.0, -4.0, 4.0);
};

Config config_from_json(const json& j);
json config_to_json(const Config& c);

/// {"m": int, "coeffs": [{"j": int, "re": float, "im": float}]}
ExtendedPolynomial polynomial_from_json(const json& j);
json polynomial_to_json(const ExtendedPolynomial& q);

/// {"m": int, "truncation_order": int, "beta": {"<j>": [[n, coeff], ...]}}
ThetaSeries theta_from_json(const json& j);
json theta_to_json(const ThetaSeries& t);

/// q as {"num", "den"} or "inf".
json rational_or_inf(const std::optional<Rational>& r);
json invariants_to_json(const Invariants& inv);

json rectangle_to_json(const Rectangle& r);
Rectangle rectangle_from_json(const json& j);

/// [{"re", "im", "winding", "residual", "box_radius"}]
json zeros_to_json(const std::vector<ZeroRecord>& zeros);
json zero_set_to_json(const ZeroSet& zs);

json verdict_to_json(const Verdict& v);
json asymptotics_to_json(const AsymptoticsReport& r);

/// {"m": int, "g": {"<j>": [[re, im], ...]}} with g_j(zeta) = sum_n g_{j,n} zeta^n.
PolynomialFamily family_from_json(const json& j);

/// Decimal text with 17 significant digits.
std::string fmt(double v);

void write_grid_csv(std::ostream& os, const std::vector<GridPoint>& grid);
void write_contour_csv(std::ostream& os, const std::vector<ContourSample>& samples);
void write_indicator_csv(std::ostream& os, const FDScan& scan);
void write_trajectories_csv(std::ostream& os, const SweepResult& sweep);

}  // namespace nlev
