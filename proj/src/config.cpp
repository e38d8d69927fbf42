#include "wellpath/config.hpp"

#include <fstream>

#include "wellpath/errors.hpp"
#include "wellpath/io.hpp"

namespace wellpath {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key) {
  const auto it = j.find(key);
  if (it == j.end()) fail_spec("config: missing key '" + key + "'");
  return *it;
}

Vec vec_from(const json& j, const std::string& key) {
  if (j.is_number()) return Vec{j.get<double>()};
  if (j.is_array() && !j.empty() && j.size() <= 3) {
    Vec v;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number()) fail_spec("config: '" + key + "' must hold numbers");
      v[static_cast<int>(i)] = j[i].get<double>();
    }
    return v;
  }
  fail_spec("config: '" + key + "' must be a number or an array of 1..3 numbers");
}

WellField well_from(const json& w) {
  WellField f;
  const std::string kind = require(w, "kind").get<std::string>();
  if (kind == "constant") {
    f.kind = WellField::Kind::constant;
    f.value = vec_from(require(w, "value"), "value");
  } else if (kind == "affine") {
    f.kind = WellField::Kind::affine;
    f.value = vec_from(require(w, "value"), "value");
    if (w.contains("origin")) f.origin = vec_from(w["origin"], "origin");
    const json& g = require(w, "grad");
    if (!g.is_array() || g.empty() || g.size() > 2)
      fail_spec("config: affine 'grad' must list one vector per space dimension");
    for (std::size_t d = 0; d < g.size(); ++d)
      f.grad[d] = vec_from(g[d], "grad");
  } else if (kind == "poly1d") {
    f.kind = WellField::Kind::poly1d;
    if (w.contains("origin")) f.origin = vec_from(w["origin"], "origin");
    if (w.contains("axis")) f.axis = vec_from(w["axis"], "axis");
    if (w.contains("direction")) f.direction = vec_from(w["direction"], "direction");
    const json& c = require(w, "coeffs");
    if (!c.is_array() || c.empty()) fail_spec("config: poly1d 'coeffs' must be a number array");
    for (const auto& v : c) {
      if (!v.is_number()) fail_spec("config: poly1d 'coeffs' must be a number array");
      f.coeffs.push_back(v.get<double>());
    }
  } else {
    fail_spec("config: unknown well kind '" + kind + "'");
  }
  return f;
}

SpatialDomain domain_from(const json& d) {
  const json& lo = require(d, "lo");
  const json& hi = require(d, "hi");
  if (lo.is_number() && hi.is_number()) {
    std::vector<double> breaks;
    if (d.contains("breakpoints"))
      for (const auto& b : d["breakpoints"]) breaks.push_back(b.get<double>());
    return make_interval(lo.get<double>(), hi.get<double>(), std::move(breaks));
  }
  std::vector<Vec> split;
  if (d.contains("split_line"))
    for (const auto& p : d["split_line"]) split.push_back(vec_from(p, "split_line"));
  return make_box2(vec_from(lo, "lo"), vec_from(hi, "hi"), std::move(split));
}

}  // namespace

json load_config(const std::string& path) {
  const std::string text = read_text_file(path);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail_spec("config: '" + path + "' is not valid JSON");
  return j;
}

std::string canonical_dump(const json& j) { return j.dump(); }

std::string config_hash(const json& j) { return hex64(fnv1a64(canonical_dump(j))); }

Potential potential_from_config(const json& p) {
  if (!p.is_object()) fail_spec("config: 'potential' must be an object");
  const std::string family = require(p, "family").get<std::string>();

  if (family == "annular") {
    AnnularSpec spec;
    spec.rings = p.value("rings", 1);
    spec.barrier = p.value("barrier", 50.0);
    if (p.contains("eps"))
      for (const auto& e : p["eps"]) spec.eps.push_back(e.get<double>());
    spec.gap_half_width = p.value("gap_half_width", spec.gap_half_width);
    spec.outer_well_radius = p.value("outer_well_radius", spec.outer_well_radius);
    spec.inner_well_frac = p.value("inner_well_frac", spec.inner_well_frac);
    return make_annular_potential(spec);
  }

  SpatialDomain domain = domain_from(require(p, "domain"));
  const int state_dim = p.value("state_dim", 1);

  std::vector<WellField> wells;
  const json& w = require(p, "wells");
  if (w.is_array()) {
    for (const auto& one : w) wells.push_back(well_from(one));
  } else {
    wells.push_back(well_from(w));
  }
  if (wells.size() == 1)
    wells.resize(static_cast<std::size_t>(domain.subdomain_count()), wells.front());

  Potential pot;
  if (family == "quartic") {
    pot = make_quartic_potential(std::move(domain), std::move(wells), state_dim);
  } else if (family == "min_power") {
    pot = make_min_power_potential(std::move(domain), std::move(wells), state_dim,
                                   p.value("q", 2.0));
  } else {
    fail_spec("config: unknown family '" + family + "'");
  }

  if (p.contains("constants")) {
    const json& c = p["constants"];
    pot.constants.delta = c.value("delta", pot.constants.delta);
    pot.constants.envelope = c.value("envelope", pot.constants.envelope);
    pot.constants.coercivity = c.value("coercivity", pot.constants.coercivity);
    pot.constants.doubling = c.value("doubling", pot.constants.doubling);
    pot.constants.modulus_slope = c.value("modulus_slope", pot.constants.modulus_slope);
  }
  return pot;
}

GeodesicOptions geodesic_options_from_config(const json& cfg) {
  GeodesicOptions o;
  if (!cfg.contains("geodesic")) return o;
  const json& g = cfg["geodesic"];
  o.cap = g.value("cap", o.cap);
  o.grid_n = g.value("grid_n", o.grid_n);
  o.lb_grid_n = g.value("lb_grid_n", o.lb_grid_n);
  o.vertices = g.value("vertices", o.vertices);
  o.max_sweeps = g.value("max_sweeps", o.max_sweeps);
  o.sweep_tol = g.value("sweep_tol", o.sweep_tol);
  o.descent_subdiv = g.value("descent_subdiv", o.descent_subdiv);
  o.box_pad = g.value("box_pad", o.box_pad);
  o.eps_cert = g.value("eps_cert", o.eps_cert);
  o.compute_lower_bound = g.value("lower_bound", o.compute_lower_bound);
  o.run_growth_audit = g.value("growth_audit", o.run_growth_audit);
  o.growth_audit_samples = g.value("growth_audit_samples", o.growth_audit_samples);
  if (g.contains("box_lo") && g.contains("box_hi")) {
    o.box_set = true;
    o.box_lo = vec_from(g["box_lo"], "box_lo");
    o.box_hi = vec_from(g["box_hi"], "box_hi");
  }
  return o;
}

}  // namespace wellpath
