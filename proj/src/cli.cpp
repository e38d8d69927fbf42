#include "wellpath/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <map>
#include <numeric>

#include "wellpath/audit.hpp"
#include "wellpath/config.hpp"
#include "wellpath/curve.hpp"
#include "wellpath/errors.hpp"
#include "wellpath/geodesic.hpp"
#include "wellpath/io.hpp"
#include "wellpath/phasefield.hpp"
#include "wellpath/recovery.hpp"
#include "wellpath/sharp.hpp"

namespace wellpath {

namespace {

using nlohmann::json;

std::string error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_spec: return "invalid_spec";
    case ErrorCode::invalid_parameter: return "invalid_parameter";
    case ErrorCode::io_failure: return "io_failure";
    case ErrorCode::numerical_failure: return "numerical_failure";
  }
  return "internal";
}

void write_run_info(const std::string& out, const std::string& verb, const json& cfg,
                    std::uint64_t seed) {
  json info;
  info["config_hash"] = config_hash(cfg);
  info["seed"] = seed;
  info["verb"] = verb;
  info["version"] = kVersion;
  write_text_file(out + "/run_info.json", info.dump(2) + "\n");
}

void stamp(CsvTable& t, const json& cfg, std::uint64_t seed) {
  t.comment("version", kVersion);
  t.comment("config_hash", config_hash(cfg));
  t.comment("seed", std::to_string(seed));
}

std::vector<double> eps_list_from(const json& cfg) {
  const auto it = cfg.find("eps");
  if (it == cfg.end() || !it->is_array() || it->empty())
    fail_spec("config: 'eps' must be a non-empty array");
  std::vector<double> eps;
  for (const auto& e : *it) eps.push_back(e.get<double>());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) fail_spec("config: eps values must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) fail_spec("config: eps list must be decreasing");
  }
  return eps;
}

// Smallest surface-tension value over the interval and its location
// (one-component potentials: exact scalar integral, grid scan + golden
// refinement).
std::pair<double, double> scalar_limit_minimum(const Potential& pot) {
  const double lo = pot.domain.lo[0], hi = pot.domain.hi[0];
  const auto sigma_at = [&](double x) {
    const Vec pos{x};
    return scalar_sigma(pot, pos, pot.well(pos, -1)[0], pot.well(pos, +1)[0]).value;
  };
  const int n = 513;
  double best = std::numeric_limits<double>::infinity(), best_x = lo;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double s = sigma_at(x);
    if (s < best) {
      best = s;
      best_x = x;
    }
  }
  const double h = (hi - lo) / n;
  double a = std::max(lo, best_x - h), b = std::min(hi, best_x + h);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = sigma_at(c), fd = sigma_at(d);
  for (int it = 0; it < 60; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = sigma_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = sigma_at(d);
    }
  }
  const double x_star = 0.5 * (a + b);
  return {sigma_at(x_star), x_star};
}

void run_gamma(const json& cfg, const std::string& out, bool mass_mode) {
  const Potential pot = potential_from_config(cfg.at("potential"));
  if (pot.space_dim != 1) fail_param("gamma sweeps run on 1-D spatial domains");
  const std::vector<double> eps = eps_list_from(cfg);
  const int cells = cfg.value("cells", 4096);
  const double lbar = cfg.value("lbar", 8.0);
  const double x0 =
      cfg.value("interface", 0.5 * (pot.domain.lo[0] + pot.domain.hi[0]));
  const std::uint64_t seed = cfg.value("seed", 12345);

  // Sharp-interface target: one interface at the cheapest available point.
  double limit = 0.0;
  if (cfg.contains("energy_limit")) {
    limit = cfg["energy_limit"].get<double>();
  } else if (pot.state_dim == 1) {
    limit = scalar_limit_minimum(pot).first;
  } else {
    const Vec pos{x0};
    limit = geodesic_distance(pot, pos, pot.well(pos, -1), pot.well(pos, +1)).distance;
  }

  MinimizeOptions mo;
  mo.max_iters = cfg.value("max_iters", 5000);
  mo.grad_tol = cfg.value("grad_tol", 1e-8);
  mo.decrease_tol = cfg.value("decrease_tol", 1e-11);
  Vec mass{};
  if (mass_mode) {
    mo.mass_constrained = true;
    if (cfg.contains("mass")) mass = Vec{cfg["mass"].get<double>()};
    mo.mass_mean = mass;
  }

  std::vector<std::string> cols = {"eps",     "cells",      "energy",    "energy_limit",
                                   "abs_gap", "rel_gap",    "interface", "iterations",
                                   "termination"};
  if (mass_mode) cols.insert(cols.end() - 1, "max_residual");
  CsvTable table(cols);
  stamp(table, cfg, seed);

  for (const double e : eps) {
    RecoveryOptions ro;
    ro.eps = e;
    ro.lbar = lbar;
    ro.cells = cells;
    ro.freeze_boundary = !mass_mode;
    RecoveryResult rec = build_recovery_field(pot, x0, ro);
    MinimizeReport rep = minimize(pot, rec.field, e, mo);
    const std::vector<double> crossings = interface_crossings(pot, rec.field);
    const double interface =
        crossings.empty() ? std::numeric_limits<double>::quiet_NaN() : crossings.front();
    const double gap = std::abs(rep.final_energy - limit);
    std::vector<std::string> row = {format_double(e),
                                    std::to_string(cells),
                                    format_double(rep.final_energy),
                                    format_double(limit),
                                    format_double(gap),
                                    format_double(gap / std::abs(limit)),
                                    format_double(interface),
                                    std::to_string(rep.iterations),
                                    rep.termination};
    if (mass_mode)
      row.insert(row.end() - 1, format_double(rep.max_residual));
    table.row(row);
    if (cfg.value("dump_fields", false))
      write_field_dump(rec.field, out + "/field_eps_" + format_double(e));
  }
  table.write(out + (mass_mode ? "/gamma_mass.csv" : "/gamma.csv"));
  write_run_info(out, mass_mode ? "gamma-mass" : "gamma", cfg, seed);
}

void run_geodesic(const json& cfg, const std::string& out) {
  const Potential pot = potential_from_config(cfg.at("potential"));
  GeodesicOptions opts = geodesic_options_from_config(cfg);
  const std::uint64_t seed = cfg.value("seed", 12345);

  struct Query {
    Vec x, p, q;
  };
  std::vector<Query> queries;
  if (cfg.contains("queries")) {
    const auto vec_of = [](const json& v) {
      if (v.is_number()) return Vec{v.get<double>()};
      Vec r;
      for (std::size_t i = 0; i < v.size() && i < 3; ++i)
        r[static_cast<int>(i)] = v[i].get<double>();
      return r;
    };
    Vec mid = 0.5 * (pot.domain.lo + pot.domain.hi);
    if (pot.space_dim == 1) mid = Vec{mid[0]};
    for (const auto& q : cfg["queries"]) {
      Query one;
      one.x = q.contains("x") ? vec_of(q["x"]) : mid;
      one.p = vec_of(q.at("p"));
      one.q = vec_of(q.at("q"));
      queries.push_back(one);
    }
  }
  if (cfg.contains("endpoint_grid")) {
    const json& g = cfg["endpoint_grid"];
    if (pot.state_dim != 2) fail_param("endpoint grids are for 2-component states");
    const int n = g.value("n", 5);
    const double lo = g.value("lo", -2.0), hi = g.value("hi", 2.0);
    Query base;
    base.x = Vec{g.value("x", 0.5 * (pot.domain.lo[0] + pot.domain.hi[0]))};
    base.p = pot.well(base.x, -1);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        Query one = base;
        one.q = Vec{lo + (hi - lo) * i / (n - 1), lo + (hi - lo) * j / (n - 1)};
        queries.push_back(one);
      }
  }
  if (queries.empty()) fail_spec("config: geodesic runs need 'queries' or 'endpoint_grid'");

  CsvTable table({"idx", "px", "py", "pz", "qx", "qy", "qz", "distance", "lower_bound", "gap",
                  "certified", "euclid_length", "sweeps", "oracle", "growth_ok"});
  stamp(table, cfg, seed);

  double c_fit = 0.0;
  const bool auto_cap = cfg.value("auto_cap", false);
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const Query& qq = queries[k];
    GeodesicOptions o = opts;
    if (auto_cap) o.cap = derive_truncation_cap(pot, qq.x, qq.p, qq.q).cap;
    const GeodesicResult res = geodesic_distance(pot, qq.x, qq.p, qq.q, o);
    const double denom =
        1.0 + weight_growth(pot, norm(qq.p)) * norm(qq.p) + weight_growth(pot, norm(qq.q)) * norm(qq.q);
    c_fit = std::max(c_fit, res.euclid_length / denom);
    table.row({std::to_string(k), format_double(qq.p[0]), format_double(qq.p[1]),
               format_double(qq.p[2]), format_double(qq.q[0]), format_double(qq.q[1]),
               format_double(qq.q[2]), format_double(res.distance),
               format_double(res.lower_bound), format_double(res.gap),
               res.certified ? "1" : "0", format_double(res.euclid_length),
               std::to_string(res.sweeps), res.oracle ? "1" : "0",
               res.growth_audit_ok ? "1" : "0"});
  }
  table.write(out + "/geodesic.csv");

  json summary;
  summary["c_fit"] = c_fit;
  summary["queries"] = queries.size();
  write_text_file(out + "/summary.json", summary.dump(2) + "\n");
  write_run_info(out, "geodesic", cfg, seed);
}

// Angular travel of the path while inside each open ring annulus.
std::vector<double> ring_travel(const Polyline& path, int rings) {
  std::vector<double> travel(static_cast<std::size_t>(rings), 0.0);
  for (std::size_t i = 0; i + 1 < path.pts.size(); ++i) {
    const Vec a = path.pts[i], b = path.pts[i + 1];
    const double ra = norm(a), rb = norm(b);
    for (int k = 1; k <= rings; ++k) {
      const double inner = 1.0 / (k + 1), outer = 1.0 / k;
      if (ra > inner && ra < outer && rb > inner && rb < outer) {
        const double da = std::atan2(a[1], a[0]), db = std::atan2(b[1], b[0]);
        travel[static_cast<std::size_t>(k - 1)] += std::abs(wrap_angle(db - da));
      }
    }
  }
  return travel;
}

void run_annular(const json& cfg, const std::string& out) {
  const int rings_max = cfg.value("rings", 6);
  if (rings_max < 1 || rings_max > 6) fail_param("annular study supports 1..6 rings");
  const double barrier = cfg.value("barrier", 50.0);
  const double grid_scale = cfg.value("grid_scale", 1.0);
  const std::uint64_t seed = cfg.value("seed", 12345);

  CsvTable table({"rings", "distance", "lower_bound", "gap", "certified", "euclid_length",
                  "angular_travel", "growth_floor_ok"});
  stamp(table, cfg, seed);

  json summary;
  std::vector<double> lengths;
  for (int k = 1; k <= rings_max; ++k) {
    AnnularSpec spec;
    spec.rings = k;
    spec.barrier = barrier;
    const Potential pot = make_annular_potential(spec);

    GeodesicOptions opts = geodesic_options_from_config(cfg);
    opts.box_set = true;
    opts.box_lo = Vec{-1.12, -1.12};
    opts.box_hi = Vec{1.12, 1.12};
    // Resolve the thinnest barrier band: ring k has half-width 1/(2k(k+1)).
    const double band = 0.3 / (2.0 * k * (k + 1));
    int n = static_cast<int>(std::ceil(grid_scale * 2.24 / (0.5 * band)));
    n = std::max(n, 257) | 1;
    opts.grid_n = n;
    opts.vertices = cfg.value("vertices", 65 + 64 * k);
    opts.max_sweeps = cfg.value("max_sweeps", 24);
    opts.compute_lower_bound = cfg.value("lower_bound", false);
    opts.run_growth_audit = false;
    if (cfg.contains("cap")) opts.cap = cfg["cap"].get<double>();

    const Vec x{0.5};
    const GeodesicResult res =
        geodesic_distance(pot, x, pot.well(x, -1), pot.well(x, +1), opts);
    const GrowthAudit growth = audit_growth(pot, 512, seed);
    const std::vector<double> travel = ring_travel(res.path, k);
    const double travel_total = std::accumulate(travel.begin(), travel.end(), 0.0);

    table.row({std::to_string(k), format_double(res.distance), format_double(res.lower_bound),
               format_double(res.gap), res.certified ? "1" : "0",
               format_double(res.euclid_length), format_double(travel_total),
               growth.ok ? "1" : "0"});
    lengths.push_back(res.euclid_length);
    summary["ring_travel"][std::to_string(k)] = travel;
  }
  table.write(out + "/annular.csv");

  // Least-squares fit length(k) ~ alpha + beta * H_k (harmonic sums H_k).
  double sx = 0, sy = 0, sxx = 0, sxy = 0, hk = 0;
  for (int k = 1; k <= rings_max; ++k) {
    hk += 1.0 / k;
    const double y = lengths[static_cast<std::size_t>(k - 1)];
    sx += hk;
    sy += y;
    sxx += hk * hk;
    sxy += hk * y;
  }
  const double m = rings_max;
  const double det = m * sxx - sx * sx;
  const double beta = det != 0.0 ? (m * sxy - sx * sy) / det : 0.0;
  const double alpha = (sy - beta * sx) / m;
  bool increasing = true;
  for (std::size_t i = 1; i < lengths.size(); ++i)
    if (!(lengths[i] > lengths[i - 1])) increasing = false;
  summary["fit_alpha"] = alpha;
  summary["fit_beta"] = beta;
  summary["lengths_strictly_increasing"] = increasing;
  write_text_file(out + "/summary.json", summary.dump(2) + "\n");
  write_run_info(out, "annular", cfg, seed);
}

void run_audit(const json& cfg, const std::string& out) {
  const Potential pot = potential_from_config(cfg.at("potential"));
  const int samples = cfg.value("samples", 2048);
  const std::uint64_t seed = cfg.value("seed", 7);

  const AuditReport rep = audit_hypotheses(pot, samples, seed);
  const GrowthAudit growth = audit_growth(pot, samples, seed);

  CsvTable table({"check", "ok", "applicable", "margin", "detail"});
  stamp(table, cfg, seed);
  const auto add = [&table](const AuditCheck& c) {
    std::string detail = c.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    table.row({c.name, c.ok ? "1" : "0", c.applicable ? "1" : "0", format_double(c.margin),
               detail});
  };
  for (const AuditCheck& c : rep.checks) add(c);
  for (const AuditCheck& c : growth.report.checks) add(c);
  table.write(out + "/audit.csv");

  json summary;
  summary["hypotheses_ok"] = rep.all_ok();
  summary["growth_ok"] = growth.ok;
  write_text_file(out + "/summary.json", summary.dump(2) + "\n");
  write_run_info(out, "audit", cfg, seed);
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"phase-field / geodesic experiment runner"};
  app.require_subcommand(1);

  struct VerbArgs {
    std::string config;
    std::string out;
  };
  std::map<std::string, VerbArgs> args;
  std::map<std::string, CLI::App*> subs;
  const std::pair<const char*, const char*> verbs[] = {
      {"gamma", "epsilon sweep of interface energies against the sharp limit"},
      {"gamma-mass", "epsilon sweep with the field mean held fixed"},
      {"geodesic", "well-to-well distance queries with certification"},
      {"annular", "winding-path length growth across annular frames"},
      {"audit", "hypothesis and growth checks for a potential"}};
  for (const auto& [verb, blurb] : verbs) {
    CLI::App* sub = app.add_subcommand(verb, blurb);
    VerbArgs& a = args[verb];
    sub->add_option("config", a.config, "JSON config path")->required();
    sub->add_option("--out", a.out, "output directory")->required();
    subs[verb] = sub;
  }
  CLI::App* version_cmd = app.add_subcommand("version", "print the version string");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (version_cmd->parsed()) {
    std::cout << kVersion << "\n";
    return 0;
  }

  std::string verb;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) verb = name;

  try {
    const VerbArgs& a = args.at(verb);
    const json cfg = load_config(a.config);
    ensure_directory(a.out);
    try {
      if (verb == "gamma") run_gamma(cfg, a.out, false);
      else if (verb == "gamma-mass") run_gamma(cfg, a.out, true);
      else if (verb == "geodesic") run_geodesic(cfg, a.out);
      else if (verb == "annular") run_annular(cfg, a.out);
      else if (verb == "audit") run_audit(cfg, a.out);
    } catch (const Error& e) {
      throw Error(e.code(), verb + ": " + e.what());
    }
    return 0;
  } catch (const Error& e) {
    json err;
    err["error"] = error_name(e.code());
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    json err;
    err["error"] = "internal";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
}

}  // namespace wellpath
