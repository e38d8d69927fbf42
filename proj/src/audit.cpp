#include "wellpath/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wellpath/rng.hpp"

namespace wellpath {

bool AuditReport::all_ok() const {
  for (const auto& c : checks)
    if (c.applicable && !c.ok) return false;
  return true;
}

const AuditCheck* AuditReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

double weight_growth(const Potential& pot, double t) {
  return 2.0 * std::sqrt(pot.growth.eval(t));
}

namespace {

struct SamplePool {
  std::vector<Vec> xs;  // spatial points in the domain
  std::vector<Vec> us;  // state points in the audit box
  double box_radius = 0.0;
};

double dist_to_wells(const Potential& pot, const Vec& x, const Vec& u) {
  return std::min(dist(u, pot.well(x, +1)), dist(u, pot.well(x, -1)));
}

SamplePool draw_samples(const Potential& pot, int samples, std::uint64_t seed) {
  SamplePool pool;
  Rng rng(seed);
  double sup_a = 0.0;
  for (int i = 0; i < samples; ++i) {
    Vec x;
    for (int d = 0; d < pot.space_dim; ++d)
      x.c[d] = rng.uniform(pot.domain.lo[d], pot.domain.hi[d]);
    pool.xs.push_back(x);
    sup_a = std::max({sup_a, norm(pot.well(x, +1)), norm(pot.well(x, -1))});
  }
  pool.box_radius = 2.0 * sup_a + 3.0;
  for (int i = 0; i < samples; ++i) {
    Vec u;
    for (int d = 0; d < pot.state_dim; ++d)
      u.c[d] = rng.uniform(-pool.box_radius, pool.box_radius);
    pool.us.push_back(u);
  }
  // Bias a share of the states toward the wells so near-well checks see the
  // regime they are about: rescale every fourth sample onto a thin shell
  // around a randomly signed well.
  for (std::size_t i = 0; i < pool.us.size(); i += 4) {
    const Vec x = pool.xs[i % pool.xs.size()];
    const Vec a = pot.well(x, rng.uniform(0.0, 1.0) < 0.5 ? +1 : -1);
    Vec dir;
    double n2 = 0.0;
    for (int d = 0; d < pot.state_dim; ++d) {
      dir.c[d] = rng.normal();
      n2 += dir.c[d] * dir.c[d];
    }
    const double n = std::sqrt(std::max(n2, 1e-300));
    const double r = rng.uniform(1e-4, pot.growth.well_radius);
    Vec u = a;
    for (int d = 0; d < pot.state_dim; ++d) u.c[d] += dir.c[d] / n * r;
    pool.us[i] = u;
  }
  return pool;
}

AuditCheck check_finite_nonnegative(const Potential& pot, const SamplePool& pool) {
  AuditCheck c{"finite_nonnegative", true, true, std::numeric_limits<double>::infinity(), ""};
  for (std::size_t i = 0; i < pool.xs.size(); ++i) {
    const double w = pot.eval(pool.xs[i], pool.us[i]);
    if (!std::isfinite(w)) {
      c.ok = false;
      c.detail = "non-finite value";
      c.margin = -1.0;
      return c;
    }
    c.margin = std::min(c.margin, w);
  }
  c.ok = c.margin >= 0.0;
  return c;
}

AuditCheck check_wells_vanish(const Potential& pot, const SamplePool& pool) {
  AuditCheck c{"wells_vanish", true, true, 0.0, ""};
  double worst = 0.0;
  for (const auto& x : pool.xs) {
    worst = std::max(worst, pot.eval(x, pot.well(x, +1)));
    worst = std::max(worst, pot.eval(x, pot.well(x, -1)));
  }
  c.ok = worst <= 1e-10;
  c.margin = 1e-10 - worst;
  return c;
}

AuditCheck check_wells_separated(const Potential& pot, const SamplePool& pool) {
  AuditCheck c{"wells_separated", true, true, 0.0, ""};
  double sep = std::numeric_limits<double>::infinity();
  for (const auto& x : pool.xs) sep = std::min(sep, pot.well_separation(x));
  c.margin = sep - pot.constants.delta * (1.0 - 1e-9);
  c.ok = c.margin >= 0.0 && sep > 0.0;
  return c;
}

AuditCheck check_growth_envelope(const Potential& pot, const SamplePool& pool) {
  AuditCheck c{"growth_envelope", true, true, std::numeric_limits<double>::infinity(), ""};
  const double C = pot.constants.envelope;
  for (std::size_t i = 0; i < pool.xs.size(); ++i) {
    const double w = pot.eval(pool.xs[i], pool.us[i]);
    const double d = dist_to_wells(pot, pool.xs[i], pool.us[i]);
    const double bound = C * pot.growth.eval(d) + 1e-12;
    c.margin = std::min(c.margin, bound - w);
  }
  c.ok = c.margin >= 0.0;
  return c;
}

AuditCheck check_growth_floor(const Potential& pot, const SamplePool& pool) {
  AuditCheck c{"growth_floor", true, true, std::numeric_limits<double>::infinity(), ""};
  if (pot.family == Family::quartic && pot.state_dim >= 2) {
    // The zero set is the whole sphere |u| = |a(x)|, not two points: a lower
    // bound in the distance to the two designated wells cannot hold.
    c.applicable = false;
    c.detail = "zero set is a well sphere in state dimension >= 2";
    c.margin = 0.0;
    return c;
  }
  if (pot.family == Family::annular) {
    c.applicable = false;
    c.detail = "ring levels decay by design; see the growth audit";
    c.margin = 0.0;
    return c;
  }
  const double C = pot.constants.envelope;
  for (std::size_t i = 0; i < pool.xs.size(); ++i) {
    const double w = pot.eval(pool.xs[i], pool.us[i]);
    const double d = dist_to_wells(pot, pool.xs[i], pool.us[i]);
    const double bound = pot.growth.eval(d) / C - 1e-12;
    c.margin = std::min(c.margin, w - bound);
  }
  c.ok = c.margin >= 0.0;
  return c;
}

AuditCheck check_coercivity(const Potential& pot, const SamplePool& pool) {
  AuditCheck c{"coercivity", true, true, std::numeric_limits<double>::infinity(), ""};
  const double C = pot.constants.coercivity;
  int hits = 0;
  for (std::size_t i = 0; i < pool.xs.size(); ++i) {
    const double nu = norm(pool.us[i]);
    if (nu < C) continue;
    ++hits;
    const double w = pot.eval(pool.xs[i], pool.us[i]);
    c.margin = std::min(c.margin, w - nu / C);
  }
  if (hits == 0) {
    c.detail = "audit box contains no states beyond the coercivity radius";
    c.margin = 0.0;
    return c;
  }
  c.ok = c.margin >= 0.0;
  return c;
}

AuditCheck check_spatial_modulus(const Potential& pot, const SamplePool& pool,
                                 std::uint64_t seed) {
  AuditCheck c{"spatial_modulus", true, true, std::numeric_limits<double>::infinity(), ""};
  if (!pot.has_frame()) {
    // The only frameless family is constant in x; verify that directly.
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < 256; ++i) {
      Vec x{rng.uniform(pot.domain.lo[0], pot.domain.hi[0])};
      Vec y{rng.uniform(pot.domain.lo[0], pot.domain.hi[0])};
      const Vec& u = pool.us[static_cast<std::size_t>(i) % pool.us.size()];
      worst = std::max(worst, std::abs(pot.eval(x, u) - pot.eval(y, u)));
    }
    c.ok = worst <= 1e-12;
    c.margin = 1e-12 - worst;
    c.detail = "constant-in-x landscape";
    return c;
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < pool.xs.size(); ++i) {
    const Vec& x = pool.xs[i];
    const Vec& y = pool.xs[(i + pool.xs.size() / 2) % pool.xs.size()];
    if (pot.domain.subdomain_at(x) != pot.domain.subdomain_at(y)) continue;
    Vec w;
    for (int d = 0; d < pot.state_dim; ++d) w.c[d] = rng.uniform(-3.0, 3.0);
    const double wx = pot.eval_adjusted(x, w);
    const double wy = pot.eval_adjusted(y, w);
    const double lhs = std::abs(wx - wy);
    const double rhs = pot.omega(dist(x, y)) * std::min(wx, wy) + 1e-12;
    c.margin = std::min(c.margin, rhs - lhs);
  }
  c.ok = c.margin >= 0.0;
  return c;
}

AuditCheck check_doubling(const Potential& pot) {
  AuditCheck c{"doubling", true, true, std::numeric_limits<double>::infinity(), ""};
  const double C = pot.constants.doubling;
  for (int i = 1; i <= 400; ++i) {
    const double t = std::pow(10.0, -4.0 + 6.0 * i / 400.0);  // 1e-4 .. 1e2
    const double ft = pot.growth.eval(t);
    if (ft <= 0.0) continue;
    c.margin = std::min(c.margin, C * ft - pot.growth.eval(2.0 * t));
  }
  c.ok = c.margin >= -1e-9;
  return c;
}

}  // namespace

AuditReport audit_hypotheses(const Potential& pot, int samples, std::uint64_t seed) {
  const SamplePool pool = draw_samples(pot, samples, seed);
  AuditReport report;
  report.checks.push_back(check_finite_nonnegative(pot, pool));
  report.checks.push_back(check_wells_vanish(pot, pool));
  report.checks.push_back(check_wells_separated(pot, pool));
  report.checks.push_back(check_growth_envelope(pot, pool));
  report.checks.push_back(check_growth_floor(pot, pool));
  report.checks.push_back(check_coercivity(pot, pool));
  report.checks.push_back(check_spatial_modulus(pot, pool, seed + 1));
  report.checks.push_back(check_doubling(pot));
  return report;
}

GrowthAudit audit_growth(const Potential& pot, int samples, std::uint64_t seed) {
  const SamplePool pool = draw_samples(pot, samples, seed);
  const double r0 = pot.growth.well_radius;

  // Reference scale: the largest weight observed one well-radius away.
  double ref_weight = 0.0;
  for (std::size_t i = 0; i < pool.xs.size(); ++i) {
    const double d = dist_to_wells(pot, pool.xs[i], pool.us[i]);
    if (d >= 0.75 * r0 && d <= 1.5 * r0)
      ref_weight = std::max(ref_weight, 2.0 * std::sqrt(pot.eval(pool.xs[i], pool.us[i])));
  }
  // Probe the shell directly as well, so the scale never comes out zero.
  {
    Rng rng(seed + 2);
    for (int i = 0; i < 256; ++i) {
      const Vec& x = pool.xs[static_cast<std::size_t>(i) % pool.xs.size()];
      Vec dir;
      double n2 = 0.0;
      for (int d = 0; d < pot.state_dim; ++d) {
        dir.c[d] = rng.normal();
        n2 += dir.c[d] * dir.c[d];
      }
      const double n = std::sqrt(std::max(n2, 1e-300));
      Vec u = pot.well(x, i % 2 == 0 ? +1 : -1);
      for (int d = 0; d < pot.state_dim; ++d) u.c[d] += dir.c[d] / n * r0;
      ref_weight = std::max(ref_weight, 2.0 * std::sqrt(pot.eval(x, u)));
    }
  }

  GrowthAudit out;
  auto& checks = out.report.checks;

  {
    AuditCheck c{"g_upper", true, true, std::numeric_limits<double>::infinity(), ""};
    const double C = std::sqrt(std::max(pot.constants.envelope, 1.0));
    for (std::size_t i = 0; i < pool.xs.size(); ++i) {
      const double w = 2.0 * std::sqrt(pot.eval(pool.xs[i], pool.us[i]));
      const double d = dist_to_wells(pot, pool.xs[i], pool.us[i]);
      c.margin = std::min(c.margin, C * weight_growth(pot, d) + 1e-12 - w);
    }
    c.ok = c.margin >= 0.0;
    checks.push_back(c);
  }

  {
    AuditCheck c{"g_near_well", true, true, std::numeric_limits<double>::infinity(), ""};
    const double c_min = kNearWellFraction * ref_weight / r0;
    double slope = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.xs.size(); ++i) {
      const double d = dist_to_wells(pot, pool.xs[i], pool.us[i]);
      if (d < 1e-6 || d > r0) continue;
      const double w = 2.0 * std::sqrt(pot.eval(pool.xs[i], pool.us[i]));
      slope = std::min(slope, w / d);
    }
    c.margin = slope - c_min;
    c.ok = std::isfinite(slope) && c.margin >= 0.0;
    if (!c.ok) c.detail = "near-well weight slope collapses against the landscape scale";
    checks.push_back(c);
  }

  {
    AuditCheck c{"g_coercive_floor", true, true, std::numeric_limits<double>::infinity(), ""};
    const double floor_min = kFloorFraction * ref_weight;
    double low = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.xs.size(); ++i) {
      const double d = dist_to_wells(pot, pool.xs[i], pool.us[i]);
      if (d < r0) continue;
      low = std::min(low, 2.0 * std::sqrt(pot.eval(pool.xs[i], pool.us[i])));
    }
    if (!std::isfinite(low)) {
      c.detail = "no samples beyond the well radius";
      c.margin = 0.0;
    } else {
      c.margin = low - floor_min;
      c.ok = c.margin >= 0.0;
    }
    checks.push_back(c);
  }

  out.ok = out.report.all_ok();
  return out;
}

}  // namespace wellpath
