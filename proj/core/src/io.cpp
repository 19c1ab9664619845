// SPDX-License-Identifier: Apache-2.0
#include "nlev/io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "nlev/errors.hpp"

namespace nlev {

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("config key '") + key + "': " + e.what());
  }
}

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json complex_json(std::complex<double> z) { return {{"re", num(z.real())}, {"im", num(z.imag())}}; }

}  // namespace

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Config config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "config must be a JSON object");
  Config c;
  c.ode.s_margin = get_or(j, "s_margin", c.ode.s_margin);
  c.ode.error_target = get_or(j, "error_target", c.ode.error_target);
  c.quad.quad_tol = get_or(j, "quad_tol", c.quad.quad_tol);
  c.quad.lambda_cut = get_or(j, "lambda_cut", c.quad.lambda_cut);
  c.search.winding.phase_step_max = get_or(j, "phase_step_max", c.search.winding.phase_step_max);
  c.search.max_depth = get_or(j, "depth", c.search.max_depth);
  c.search.target_radius = get_or(j, "target_radius", c.search.target_radius);
  if (j.contains("region")) c.region = rectangle_from_json(j.at("region"));
  if (c.ode.s_margin <= 0 || c.ode.error_target <= 0 || c.quad.quad_tol <= 0 || c.quad.lambda_cut <= 0 ||
      c.search.winding.phase_step_max <= 0 || c.search.max_depth < 0 || c.search.target_radius <= 0) {
    throw Error(ErrorKind::InvalidInput, "config values must be positive");
  }
  return c;
}

json config_to_json(const Config& c) {
  return {{"s_margin", c.ode.s_margin},
          {"error_target", c.ode.error_target},
          {"quad_tol", c.quad.quad_tol},
          {"lambda_cut", c.quad.lambda_cut},
          {"phase_step_max", c.search.winding.phase_step_max},
          {"depth", c.search.max_depth},
          {"target_radius", c.search.target_radius},
          {"region", rectangle_to_json(c.region)}};
}

ExtendedPolynomial polynomial_from_json(const json& j) {
  try {
    const int m = j.at("m").get<int>();
    if (m < 2) throw Error(ErrorKind::InvalidInput, "polynomial: m must be >= 2");
    std::map<int, cplx> coeffs;
    if (j.contains("coeffs")) {
      for (const auto& e : j.at("coeffs")) {
        const int idx = e.at("j").get<int>();
        if (idx == m - 1) throw Error(ErrorKind::InvalidInput, "polynomial: the x^{m-1} coefficient is implicit");
        if (idx < 0 || idx > m - 2) throw Error(ErrorKind::InvalidInput, "polynomial: j out of range");
        if (coeffs.count(idx)) throw Error(ErrorKind::InvalidInput, "polynomial: duplicate j");
        coeffs[idx] = cplx(e.value("re", 0.0), e.value("im", 0.0));
      }
    }
    return ExtendedPolynomial(m, coeffs);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("polynomial JSON: ") + e.what());
  }
}

json polynomial_to_json(const ExtendedPolynomial& q) {
  json coeffs = json::array();
  for (int j = 0; j <= q.m() - 2; ++j) {
    const cplx c = q.coeff(j);
    if (c != cplx(0.0, 0.0)) coeffs.push_back({{"j", j}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"m", q.m()}, {"coeffs", coeffs}};
}

ThetaSeries theta_from_json(const json& j) {
  try {
    ThetaSeries t;
    t.m = j.at("m").get<int>();
    t.truncation_order = j.at("truncation_order").get<int>();
    if (j.contains("beta")) {
      for (const auto& [key, terms] : j.at("beta").items()) {
        std::size_t pos = 0;
        const int idx = std::stoi(key, &pos);
        if (pos != key.size()) throw Error(ErrorKind::InvalidInput, "theta: bad beta key '" + key + "'");
        auto& row = t.beta[idx];
        for (const auto& term : terms) {
          if (!term.is_array() || term.size() != 2) throw Error(ErrorKind::InvalidInput, "theta: terms are [n, coeff] pairs");
          const int n = term[0].get<int>();
          if (row.count(n)) throw Error(ErrorKind::InvalidInput, "theta: duplicate term");
          row[n] = term[1].get<double>();
        }
      }
    }
    t.validate();
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("theta JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::InvalidInput, "theta: beta keys must be integers");
  }
}

json theta_to_json(const ThetaSeries& t) {
  json beta = json::object();
  for (const auto& [idx, row] : t.beta) {
    json terms = json::array();
    for (const auto& [n, d] : row) terms.push_back({n, d});
    beta[std::to_string(idx)] = terms;
  }
  return {{"m", t.m}, {"truncation_order", t.truncation_order}, {"beta", beta}};
}

json rational_or_inf(const std::optional<Rational>& r) {
  if (!r) return "inf";
  return {{"num", boost::multiprecision::numerator(*r).convert_to<long long>()},
          {"den", boost::multiprecision::denominator(*r).convert_to<long long>()}};
}

json invariants_to_json(const Invariants& inv) {
  json tau = json::object();
  for (const auto& [idx, o] : inv.tau) {
    tau[std::to_string(idx)] = o.saturated ? json(">=" + std::to_string(o.order)) : json(o.order);
  }
  json out = {{"m", inv.m},
              {"q", rational_or_inf(inv.q)},
              {"tau", tau},
              {"Q", polynomial_to_json(inv.Q)},
              {"conditional", inv.conditional}};
  out["p"] = inv.p ? rational_or_inf(inv.p) : json(nullptr);
  return out;
}

json rectangle_to_json(const Rectangle& r) {
  return {{"re", {r.lo_re(), r.hi_re()}},
          {"im", {r.lo_im(), r.hi_im()}},
          {"plane", r.plane == Plane::z ? "z" : "zeta"}};
}

Rectangle rectangle_from_json(const json& j) {
  try {
    std::array<double, 4> v{};
    Plane plane = Plane::z;
    if (j.is_array()) {
      if (j.size() != 4) throw Error(ErrorKind::InvalidInput, "region must be [re0, re1, im0, im1]");
      for (int i = 0; i < 4; ++i) v[i] = j[i].get<double>();
    } else {
      v = {j.at("re")[0].get<double>(), j.at("re")[1].get<double>(), j.at("im")[0].get<double>(),
           j.at("im")[1].get<double>()};
      if (j.value("plane", std::string("z")) == "zeta") plane = Plane::zeta;
    }
    if (!(v[1] > v[0]) || !(v[3] > v[2])) throw Error(ErrorKind::InvalidInput, "region has non-positive extent");
    return make_rect(v[0], v[1], v[2], v[3], plane);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("region JSON: ") + e.what());
  }
}

json zeros_to_json(const std::vector<ZeroRecord>& zeros) {
  json out = json::array();
  for (const auto& z : zeros) {
    out.push_back({{"re", z.location.real()},
                   {"im", z.location.imag()},
                   {"winding", z.winding},
                   {"residual", num(z.residual_logmag_drop)},
                   {"box_radius", z.box_radius},
                   {"history", z.history},
                   {"iterations", z.iterations}});
  }
  return out;
}

json zero_set_to_json(const ZeroSet& zs) {
  json unresolved = json::array();
  for (const auto& r : zs.unresolved) unresolved.push_back(rectangle_to_json(r));
  return {{"plane", zs.plane == Plane::z ? "z" : "zeta"},
          {"region", rectangle_to_json(zs.region)},
          {"total_winding", zs.total_winding},
          {"depth_exhausted", zs.depth_exhausted},
          {"zeros", zeros_to_json(zs.zeros)},
          {"unresolved", unresolved}};
}

json verdict_to_json(const Verdict& v) {
  json out;
  out["classification"] = to_string(v.classification);
  if (v.invariants) out["invariants"] = invariants_to_json(*v.invariants);
  out["Q"] = polynomial_to_json(v.Q);
  if (v.shift) out["shift"] = complex_json(*v.shift);
  json ev = json::array();
  for (const auto& e : v.evidence) {
    ev.push_back({{"re", e.zero.location.real()},
                  {"im", e.zero.location.imag()},
                  {"winding", e.zero.winding},
                  {"residual", num(e.zero.residual_logmag_drop)},
                  {"box_radius", e.zero.box_radius},
                  {"oracle_confirmed", e.oracle_confirmed},
                  {"oracle", complex_json(e.oracle_location)},
                  {"oracle_distance", e.oracle_distance}});
  }
  out["evidence"] = ev;
  out["evidence_note"] = v.evidence_note;
  out["searched_region"] = v.searched_region ? rectangle_to_json(*v.searched_region) : json(nullptr);
  out["zeros_found"] = v.zeros_found;
  out["notes"] = v.notes;
  return out;
}

json asymptotics_to_json(const AsymptoticsReport& r) {
  json samples = json::array();
  for (std::size_t i = 0; i < r.zs.size(); ++i) samples.push_back({{"z", r.zs[i]}, {"log_w", r.log_w[i]}});
  return {{"eta", r.profile.eta},
          {"maximizers", r.profile.maximizers},
          {"orders", r.profile.orders},
          {"k", r.profile.k},
          {"predicted_exponent", r.predicted_exponent},
          {"fitted_exponent", r.fitted_exponent},
          {"fitted_log_c", r.fitted_log_c},
          {"fit_residual", r.fit_residual},
          {"tolerance", r.tolerance},
          {"agrees", r.agrees},
          {"samples", samples}};
}

PolynomialFamily family_from_json(const json& j) {
  try {
    PolynomialFamily f;
    f.m = j.at("m").get<int>();
    if (f.m < 2) throw Error(ErrorKind::InvalidInput, "family: m must be >= 2");
    for (const auto& [key, poly] : j.at("g").items()) {
      const int idx = std::stoi(key);
      if (idx < 0 || idx > f.m - 2) throw Error(ErrorKind::InvalidInput, "family: j out of range");
      auto& coeffs = f.g[idx];
      for (const auto& c : poly) {
        if (c.is_number()) coeffs.emplace_back(c.get<double>(), 0.0);
        else coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
      }
    }
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("family JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::InvalidInput, "family: g keys must be integers");
  }
}

void write_grid_csv(std::ostream& os, const std::vector<GridPoint>& grid) {
  os << "z_re,z_im,log_mag,phase\n";
  for (const auto& p : grid) {
    os << fmt(p.z.real()) << ',' << fmt(p.z.imag()) << ',' << fmt(p.w.log_mag) << ','
       << fmt(p.w.principal_phase()) << '\n';
  }
}

void write_contour_csv(std::ostream& os, const std::vector<ContourSample>& samples) {
  os << "t,z_re,z_im,log_mag,phase_unwrapped\n";
  for (const auto& s : samples) {
    os << fmt(s.t) << ',' << fmt(s.z.real()) << ',' << fmt(s.z.imag()) << ',' << fmt(s.log_mag) << ','
       << fmt(s.phase_unwrapped) << '\n';
  }
}

void write_indicator_csv(std::ostream& os, const FDScan& scan) {
  os << "z_re,z_im,indicator\n";
  for (const auto& s : scan.samples) os << fmt(s.z.real()) << ',' << fmt(s.z.imag()) << ',' << fmt(s.indicator) << '\n';
}

void write_trajectories_csv(std::ostream& os, const SweepResult& sweep) {
  os << "trajectory,sample,zeta_re,zeta_im,z_re,z_im,status\n";
  for (const auto& t : sweep.trajectories) {
    for (std::size_t s = static_cast<std::size_t>(t.started_at); s < sweep.zetas.size(); ++s) {
      const auto& zeta = sweep.zetas[s];
      os << t.id << ',' << s << ',' << fmt(zeta.real()) << ',' << fmt(zeta.imag()) << ',';
      if (t.points[s]) {
        os << fmt(t.points[s]->real()) << ',' << fmt(t.points[s]->imag()) << ",tracked\n";
      } else {
        os << ",,lost\n";
        break;
      }
    }
  }
}

}  // namespace nlev
