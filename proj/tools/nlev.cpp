// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlev/errors.hpp"
#include "nlev/evaluator.hpp"
#include "nlev/io.hpp"
#include "nlev/verdict.hpp"
#include "nlev/zero_finder.hpp"

using namespace nlev;

namespace {

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

struct Output {
  std::string path = "-";
  std::ofstream file;
  std::ostream& stream() {
    if (path == "-") return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    }
    return file;
  }
};

Rectangle region_from(const std::vector<double>& v, const Config& cfg) {
  if (v.empty()) return cfg.region;
  if (v.size() != 4 || !(v[1] > v[0]) || !(v[3] > v[2]))
    throw Error(ErrorKind::InvalidInput, "--region expects RE0 RE1 IM0 IM1 with RE0<RE1, IM0<IM1");
  return make_rect(v[0], v[1], v[2], v[3]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear eigenvalues of polynomial Schrodinger pencils"};
  app.require_subcommand(1);
  std::string config_path;
  Output out;
  app.add_option("-c,--config", config_path, "JSON config with tolerances and search policy");
  app.add_option("-o,--output", out.path, "Output file (default stdout)");

  std::string theta_path, poly_path, family_path;
  std::vector<double> region;
  int n_re = 41, n_im = 41;
  std::string family_kind = "squared";
  std::string contour_path;

  auto* canon = app.add_subcommand("canon", "Invariants (m, q, Q) of a prepared series");
  canon->add_option("theta", theta_path, "Theta series JSON ('-' for stdin)")->required();

  auto* wr = app.add_subcommand("wronskian", "W(z) on a grid, as CSV");
  wr->add_option("poly", poly_path, "Polynomial JSON")->required();
  wr->add_option("--region", region, "RE0 RE1 IM0 IM1")->expected(4);
  wr->add_option("--nre", n_re, "Points along Re z")->check(CLI::PositiveNumber);
  wr->add_option("--nim", n_im, "Points along Im z")->check(CLI::PositiveNumber);
  wr->add_option("--family", family_kind, "squared or factored")->check(CLI::IsMember({"squared", "factored"}));

  auto* zs = app.add_subcommand("zeros", "Zeros of W in a rectangle, as JSON");
  zs->add_option("poly", poly_path, "Polynomial JSON")->required();
  zs->add_option("--region", region, "RE0 RE1 IM0 IM1")->expected(4);
  zs->add_option("--family", family_kind, "squared or factored")->check(CLI::IsMember({"squared", "factored"}));
  zs->add_option("--contour-csv", contour_path, "Also dump the boundary samples of the region");

  auto* vd = app.add_subcommand("verdict", "Hypoellipticity verdict for a series or polynomial");
  auto* vd_theta = vd->add_option("--theta", theta_path, "Theta series JSON");
  auto* vd_poly = vd->add_option("--poly", poly_path, "Polynomial JSON");
  vd_theta->excludes(vd_poly);
  vd->add_option("--region", region, "RE0 RE1 IM0 IM1")->expected(4);

  double z1 = 2.0, z2 = 5.0;
  int samples = 13;
  auto* as = app.add_subcommand("asymptotics", "Real-axis asymptotics of the factored Wronskian");
  as->add_option("poly", poly_path, "Polynomial JSON (m even, real coefficients)")->required();
  as->add_option("--z1", z1, "Fit interval start");
  as->add_option("--z2", z2, "Fit interval end");
  as->add_option("--samples", samples, "Sample count");

  std::vector<double> zetas;
  double radius = 0.5;
  auto* sw = app.add_subcommand("sweep", "Zero trajectories along a coefficient family, as CSV");
  sw->add_option("family", family_path, "Family JSON")->required();
  sw->add_option("--zeta", zetas, "Real zeta samples (overrides the family file)");
  sw->add_option("--region", region, "RE0 RE1 IM0 IM1")->expected(4);
  sw->add_option("--radius", radius, "Tracking radius");

  int steps_re = 40, steps_im = 40, fd_n = 1600;
  double fd_L = 0.0;
  auto* oc = app.add_subcommand("oracle", "Finite-difference singularity indicator, as CSV");
  oc->add_option("poly", poly_path, "Polynomial JSON")->required();
  oc->add_option("--region", region, "RE0 RE1 IM0 IM1")->expected(4);
  oc->add_option("--steps-re", steps_re, "Grid steps along Re z")->check(CLI::PositiveNumber);
  oc->add_option("--steps-im", steps_im, "Grid steps along Im z")->check(CLI::PositiveNumber);
  oc->add_option("--L", fd_L, "Half-width of the x-interval (0 = automatic)");
  oc->add_option("--n", fd_n, "Interior grid points");

  CLI11_PARSE(app, argc, argv);

  try {
    const Config cfg = config_path.empty() ? Config{} : config_from_json(read_json(config_path));
    std::ostream& os = out.stream();

    if (*canon) {
      const auto inv = canonicalize_prepared(theta_from_json(read_json(theta_path)));
      os << invariants_to_json(inv).dump(2) << '\n';
    } else if (*wr) {
      const auto q = polynomial_from_json(read_json(poly_path));
      const auto grid = wronskian_grid(q, region_from(region, cfg), n_re, n_im,
                                       family_kind == "squared" ? Family::squared : Family::factored,
                                       cfg.ode, cfg.quad);
      write_grid_csv(os, grid);
    } else if (*zs) {
      const auto q = polynomial_from_json(read_json(poly_path));
      const Rectangle rect = region_from(region, cfg);
      ZeroSet set;
      Evaluator f;
      if (family_kind == "squared") {
        set = squared_zeros(q, rect, cfg.search, cfg.ode);
        f = squared_evaluator(q, rect.inflated(std::pow(1.03, 5)).max_abs(), cfg.ode);
      } else {
        f = factored_evaluator(q, cfg.quad);
        set = locate_zeros(f, rect, cfg.search);
      }
      os << zero_set_to_json(set).dump(2) << '\n';
      if (!contour_path.empty()) {
        std::ofstream c(contour_path);
        write_contour_csv(c, winding_contour(f, set.region, cfg.search.winding).samples);
      }
    } else if (*vd) {
      if (theta_path.empty() == poly_path.empty())
        throw Error(ErrorKind::InvalidInput, "verdict needs exactly one of --theta or --poly");
      VerdictConfig vc;
      vc.region = region_from(region, cfg);
      vc.search = cfg.search;
      vc.ode = cfg.ode;
      const Verdict v = theta_path.empty() ? verdict(polynomial_from_json(read_json(poly_path)), vc)
                                           : verdict(theta_from_json(read_json(theta_path)), vc);
      os << verdict_to_json(v).dump(2) << '\n';
    } else if (*as) {
      const auto q = polynomial_from_json(read_json(poly_path));
      os << asymptotics_to_json(asymptotics_report(q, z1, z2, samples, cfg.quad)).dump(2) << '\n';
    } else if (*sw) {
      const json fj = read_json(family_path);
      const auto fam = family_from_json(fj);
      std::vector<std::complex<double>> zs_list;
      if (!zetas.empty()) {
        for (double z : zetas) zs_list.emplace_back(z, 0.0);
      } else if (fj.contains("zetas")) {
        for (const auto& z : fj.at("zetas")) {
          if (z.is_number()) zs_list.emplace_back(z.get<double>(), 0.0);
          else zs_list.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
        }
      } else {
        throw Error(ErrorKind::InvalidInput, "sweep needs zeta samples (--zeta or \"zetas\" in the family file)");
      }
      SweepConfig sc;
      if (!region.empty()) sc.region = region_from(region, cfg);
      else if (!config_path.empty()) sc.region = cfg.region;
      sc.tracking_radius = radius;
      sc.search = cfg.search;
      sc.ode = cfg.ode;
      const auto res = sweep_family(fam, zs_list, sc);
      write_trajectories_csv(os, res);
      for (const auto& n : res.notes) std::cerr << n << '\n';
    } else if (*oc) {
      const auto q = polynomial_from_json(read_json(poly_path));
      FDGrid grid{fd_L, fd_n};
      write_indicator_csv(os, fd_pencil_scan(q, region_from(region, cfg), steps_re, steps_im, grid));
    }
  } catch (const Error& e) {
    std::cerr << "nlev: " << e.what() << '\n';
    const bool input = e.kind() == ErrorKind::InvalidInput || e.kind() == ErrorKind::TruncationExhausted;
    return input ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "nlev: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
