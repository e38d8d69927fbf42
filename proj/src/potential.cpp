#include "wellpath/potential.hpp"

#include <algorithm>
#include <cmath>

#include "wellpath/errors.hpp"

namespace wellpath {

// ---------------------------------------------------------------------------
// GrowthFunction
// ---------------------------------------------------------------------------

double GrowthFunction::eval(double t) const {
  if (t <= 0.0) return 0.0;
  switch (kind) {
    case Kind::power:
      return std::pow(t, alpha);
    case Kind::quartic_envelope:
      return t * t * (t + 2.0) * (t + 2.0);
  }
  return 0.0;
}

double GrowthFunction::doubling_bound() const {
  switch (kind) {
    case Kind::power:
      return std::pow(2.0, alpha);
    case Kind::quartic_envelope:
      // f(2t)/f(t) = 4 ((2t+2)/(t+2))^2, increasing in t with supremum 16.
      return 16.0;
  }
  return 2.0;
}

double GrowthFunction::antiderivative(double t) const {
  if (t <= 0.0) return 0.0;
  switch (kind) {
    case Kind::power:
      return std::pow(t, alpha + 1.0) / (alpha + 1.0);
    case Kind::quartic_envelope:
      // int t^2 (t+2)^2 = t^5/5 + t^4 + 4 t^3 / 3
      return t * t * t * t * t / 5.0 + t * t * t * t + 4.0 * t * t * t / 3.0;
  }
  return 0.0;
}

double GrowthFunction::left_inverse_of_antiderivative(double y) const {
  if (y <= 0.0) return 0.0;
  // Minimal left inverse G(y) = inf{t >= 0 : F(t) >= y}; F is strictly
  // increasing for both kinds, so plain bisection applies.
  double hi = 1.0;
  while (antiderivative(hi) < y) {
    hi *= 2.0;
    if (hi > 1e12) fail_numeric("growth antiderivative inverse out of range");
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (antiderivative(mid) >= y ? hi : lo) = mid;
  }
  return hi;
}

// ---------------------------------------------------------------------------
// WellField
// ---------------------------------------------------------------------------

Vec WellField::eval(const Vec& x) const {
  switch (kind) {
    case Kind::constant:
      return value;
    case Kind::affine: {
      Vec a = value;
      for (int j = 0; j < 2; ++j) a += (x[j] - origin[j]) * grad[j];
      return a;
    }
    case Kind::poly1d: {
      const double s = dot(axis, x - origin);
      double p = 0.0;
      for (size_t k = coeffs.size(); k-- > 0;) p = p * s + coeffs[k];
      return p * direction;
    }
  }
  return value;
}

double WellField::gradient_bound(const SpatialDomain& domain) const {
  switch (kind) {
    case Kind::constant:
      return 0.0;
    case Kind::affine:
      return std::sqrt(norm2(grad[0]) + norm2(grad[1]));
    case Kind::poly1d: {
      // Range of the scalar coordinate over the box corners, then a sampled
      // bound on |p'| with a safety margin.
      double smin = 1e300, smax = -1e300;
      for (int corner = 0; corner < 4; ++corner) {
        Vec x{(corner & 1) ? domain.hi[0] : domain.lo[0],
              (corner & 2) ? domain.hi[1] : domain.lo[1]};
        const double s = dot(axis, x - origin);
        smin = std::min(smin, s);
        smax = std::max(smax, s);
      }
      double bound = 0.0;
      const int n = 101;
      for (int i = 0; i < n; ++i) {
        const double s = smin + (smax - smin) * i / (n - 1);
        double dp = 0.0;  // p'(s)
        for (size_t k = coeffs.size(); k-- > 1;) dp = dp * s + coeffs[k] * static_cast<double>(k);
        bound = std::max(bound, std::abs(dp));
      }
      return 1.1 * bound * norm(direction) * norm(axis);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Annular landscape
// ---------------------------------------------------------------------------

namespace {

double annular_eps(const AnnularSpec& spec, int k) {
  if (!spec.eps.empty()) return spec.eps[static_cast<size_t>(k)];
  return 0.01 * std::pow(0.25, k);
}

// Distance from (r, th) to a barrier band {blo <= r <= bhi} minus the angular
// gap of half-width `gap` centered at `gap_center`. Good enough for a
// continuous collar blend: exact on the band, positive off it.
double band_distance(double r, double th, double blo, double bhi, double gap_center,
                     double gap) {
  const double dr = std::max({0.0, blo - r, r - bhi});
  const double ad = std::abs(wrap_angle(th - gap_center));
  const double rc = std::clamp(r, blo, bhi);
  const double da = ad >= gap ? 0.0 : (gap - ad) * rc;
  return std::hypot(dr, da);
}

}  // namespace

double annular_base_value(const AnnularSpec& spec, const Vec& u) {
  const int n = spec.rings;
  const double r = std::hypot(u[0], u[1]);
  const double th = std::atan2(u[1], u[0]);
  const double e0 = annular_eps(spec, 0);
  const double r_inner = 1.0 / (n + 1);

  // Radial web profile: constant on each outer ring half, interpolating down
  // to the next level across the inner half.
  double base;
  int k = 0;  // ring index containing r (1-based), 0 when outside all rings
  if (r >= 1.0) {
    const double t = std::clamp((r - 1.0) / 0.1, 0.0, 1.0);
    base = e0 + t * (spec.barrier - e0);
  } else if (r <= r_inner) {
    base = annular_eps(spec, n);
  } else {
    k = 1;
    while (r < 1.0 / (k + 1)) ++k;  // now 1/(k+1) <= r < 1/k
    const double Rk = 1.0 / k, Rk1 = 1.0 / (k + 1);
    const double mid = 0.5 * (Rk + Rk1);
    if (r >= mid) {
      base = annular_eps(spec, k - 1);
    } else {
      const double t = (r - Rk1) / (mid - Rk1);
      base = annular_eps(spec, k) + t * (annular_eps(spec, k - 1) - annular_eps(spec, k));
    }
  }
  if (k == 0) return base;

  // Barrier bands of the containing ring: outer band gapped at the bottom,
  // inner band gapped at the top, value barrier/k, linear collar blend.
  const double Rk = 1.0 / k, Rk1 = 1.0 / (k + 1);
  const double mid = 0.5 * (Rk + Rk1);
  const double Mk = spec.barrier / k;
  const double gap = spec.gap_half_width;

  double value = base;
  const double w_out = Rk - mid;
  const double collar_out = std::min(0.09 * w_out, 0.4 * gap * Rk1);
  const double d_out = band_distance(r, th, mid + 0.35 * w_out, mid + 0.65 * w_out,
                                     -0.5 * kPi, gap);
  if (d_out < collar_out) value = std::max(value, base + (1.0 - d_out / collar_out) * (Mk - base));

  const double w_in = mid - Rk1;
  const double collar_in = std::min(0.09 * w_in, 0.4 * gap * Rk1);
  const double d_in = band_distance(r, th, Rk1 + 0.35 * w_in, Rk1 + 0.65 * w_in,
                                    0.5 * kPi, gap);
  if (d_in < collar_in) value = std::max(value, base + (1.0 - d_in / collar_in) * (Mk - base));

  return value;
}

namespace {

double annular_value(const AnnularSpec& spec, const Vec& u) {
  const Vec well_out{0.0, -1.0};
  const Vec well_in{0.0, 0.0};
  const double rho_out = spec.outer_well_radius;
  const double rho_in = spec.inner_well_frac / (spec.rings + 1);
  double m = 1.0;
  const double d_out = dist(u, well_out);
  if (d_out < rho_out) m *= (d_out / rho_out) * (d_out / rho_out);
  const double d_in = dist(u, well_in);
  if (d_in < rho_in) m *= (d_in / rho_in) * (d_in / rho_in);
  return m * annular_base_value(spec, u);
}

}  // namespace

// ---------------------------------------------------------------------------
// Potential evaluation
// ---------------------------------------------------------------------------

Vec Potential::well(const Vec& x, int sign) const {
  if (!symmetric_wells) return sign > 0 ? fixed_plus_well : fixed_minus_well;
  const Vec a = plus_wells[static_cast<size_t>(domain.subdomain_at(x))].eval(x);
  return sign > 0 ? a : -a;
}

double Potential::well_separation(const Vec& x) const {
  return dist(well(x, +1), well(x, -1));
}

double Potential::eval(const Vec& x, const Vec& u) const {
  switch (family) {
    case Family::quartic: {
      const Vec a = well(x, +1);
      const double g = norm2(u) - norm2(a);
      return g * g;
    }
    case Family::min_power: {
      const Vec a = well(x, +1);
      const double rp = dist(u, a);
      const double rm = dist(u, -a);
      return std::pow(std::min(rp, rm), q);
    }
    case Family::annular:
      return annular_value(annular, u);
  }
  return 0.0;
}

Vec Potential::du(const Vec& x, const Vec& u) const {
  switch (family) {
    case Family::quartic: {
      const Vec a = well(x, +1);
      const double g = norm2(u) - norm2(a);
      return 4.0 * g * u;
    }
    case Family::min_power: {
      // Active-branch gradient; on the tie set the "+" branch is chosen, and
      // at a well (or for q < 2 at the well singularity) the zero subgradient.
      const Vec a = well(x, +1);
      const double rp = dist(u, a);
      const double rm = dist(u, -a);
      const bool plus = rp <= rm;
      const double rmin = plus ? rp : rm;
      if (rmin < 1e-300) return Vec{};
      const Vec dir = plus ? (u - a) : (u + a);
      return q * std::pow(rmin, q - 2.0) * dir;
    }
    case Family::annular:
      fail_param("state gradient is not available for the annular family");
  }
  return Vec{};
}

// ---------------------------------------------------------------------------
// Symmetric frame
// ---------------------------------------------------------------------------

namespace {

// Orthonormal frame with first axis a/|a|; deterministic completion.
void build_frame(const Vec& a, int m, Vec cols[3]) {
  const double na = norm(a);
  if (na < 1e-300) fail_param("frame undefined where the well field vanishes");
  const Vec ahat = (1.0 / na) * a;
  cols[0] = ahat;
  if (m == 1) return;
  if (m == 2) {
    cols[1] = perp2(ahat);
    return;
  }
  // m == 3: seed with the coordinate axis least aligned with ahat.
  int j = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(ahat[i]) < std::abs(ahat[j])) j = i;
  Vec seed{};
  seed[j] = 1.0;
  Vec n2 = seed - dot(seed, ahat) * ahat;
  n2 *= 1.0 / norm(n2);
  cols[1] = n2;
  cols[2] = Vec{ahat[1] * n2[2] - ahat[2] * n2[1], ahat[2] * n2[0] - ahat[0] * n2[2],
                ahat[0] * n2[1] - ahat[1] * n2[0]};
}

}  // namespace

Vec Potential::frame_apply(const Vec& x, const Vec& w) const {
  if (!has_frame()) fail_param("this family has no symmetric well frame");
  const Vec a = well(x, +1);
  Vec cols[3];
  build_frame(a, state_dim, cols);
  const double na = norm(a);
  Vec u{};
  for (int i = 0; i < state_dim; ++i) u += (na * w[i]) * cols[i];
  return u;
}

Vec Potential::frame_invert(const Vec& x, const Vec& u) const {
  if (!has_frame()) fail_param("this family has no symmetric well frame");
  const Vec a = well(x, +1);
  Vec cols[3];
  build_frame(a, state_dim, cols);
  const double na = norm(a);
  Vec w{};
  for (int i = 0; i < state_dim; ++i) w[i] = dot(u, cols[i]) / na;
  return w;
}

double Potential::eval_adjusted(const Vec& x, const Vec& w) const {
  return eval(x, frame_apply(x, w));
}

double Potential::sup_on_box(const Vec& x, double r, int samples_per_axis) const {
  const int n = std::max(2, samples_per_axis);
  double sup = 0.0;
  const auto coord = [&](int idx) { return -r + 2.0 * r * idx / (n - 1); };
  if (state_dim == 1) {
    for (int i = 0; i < n; ++i) sup = std::max(sup, eval(x, Vec{coord(i)}));
  } else if (state_dim == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sup = std::max(sup, eval(x, Vec{coord(i), coord(j)}));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          sup = std::max(sup, eval(x, Vec{coord(i), coord(j), coord(k)}));
  }
  return sup;
}

void Potential::validate() const {
  domain.validate();
  if (state_dim < 1 || state_dim > 3) fail_spec("state dimension must be 1, 2, or 3");
  if (family == Family::annular) {
    if (state_dim != 2) fail_spec("the annular family lives in a 2-D state plane");
    if (annular.rings < 1) fail_spec("annular: need at least one ring");
    if (annular.rings > 12) fail_spec("annular: ring count too large for the fixed radii 1/k");
    if (!(annular.gap_half_width > 0.0 && annular.gap_half_width < kPi / 16.0))
      fail_spec("annular: gap half-width must lie in (0, pi/16)");
    if (!(annular.barrier > 0.0)) fail_spec("annular: barrier height must be positive");
    double prev = annular.barrier;
    for (size_t k = 0; k < annular.eps.size(); ++k) {
      if (!(annular.eps[k] > 0.0 && annular.eps[k] < prev))
        fail_spec("annular: web levels must be positive and strictly decreasing below the barrier");
      prev = annular.eps[k];
    }
    if (!annular.eps.empty() && annular.eps.size() != static_cast<size_t>(annular.rings) + 1)
      fail_spec("annular: need rings+1 web levels (outermost first)");
    if (!(annular.outer_well_radius > 0.0 && annular.outer_well_radius < 0.08))
      fail_spec("annular: outer well radius must stay clear of the barrier bands");
    if (!(annular.inner_well_frac > 0.0 && annular.inner_well_frac < 1.0))
      fail_spec("annular: inner well fraction must lie in (0, 1)");
    return;
  }
  if (plus_wells.size() != static_cast<size_t>(domain.subdomain_count()))
    fail_spec("need exactly one well field per subdomain");
  if (family == Family::min_power && !(q >= 1.0))
    fail_spec("min_power exponent must be >= 1");
  // Wells must stay separated: sampled check of inf |a|.
  const int n = 65;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= (domain.dim == 2 ? n : 0); ++j) {
      Vec x{domain.lo[0] + (domain.hi[0] - domain.lo[0]) * i / n,
            domain.dim == 2 ? domain.lo[1] + (domain.hi[1] - domain.lo[1]) * j / n : 0.0};
      if (norm(well(x, +1)) < 1e-9)
        fail_spec("well field vanishes inside the domain; wells must stay separated");
    }
  }
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

namespace {

struct WellRange {
  double inf_norm = 1e300;  // inf |a|
  double sup_norm = 0.0;    // sup |a|
  double grad_bound = 0.0;  // sup |da/dx|
};

WellRange scan_wells(const Potential& p) {
  WellRange r;
  const int n = 129;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= (p.domain.dim == 2 ? n : 0); ++j) {
      Vec x{p.domain.lo[0] + (p.domain.hi[0] - p.domain.lo[0]) * i / n,
            p.domain.dim == 2 ? p.domain.lo[1] + (p.domain.hi[1] - p.domain.lo[1]) * j / n : 0.0};
      const double na = norm(p.well(x, +1));
      r.inf_norm = std::min(r.inf_norm, na);
      r.sup_norm = std::max(r.sup_norm, na);
    }
  }
  for (const auto& w : p.plus_wells)
    r.grad_bound = std::max(r.grad_bound, w.gradient_bound(p.domain));
  return r;
}

// Shared constant derivation for the symmetric families. p_exp is the power
// with which |a| scales the pulled-back potential (4 for quartic, q for
// min_power); the spatial modulus is omega(r) = slope * r with
// slope = p_exp * sup|a|^{p-1} * sup|da/dx| / inf|a|^p (+5% margin).
void finalize_symmetric(Potential& p, double p_exp) {
  const WellRange r = scan_wells(p);
  if (r.inf_norm < 1e-9) fail_spec("well field vanishes inside the domain");
  auto& c = p.constants;
  c.delta = 2.0 * r.inf_norm;
  c.doubling = p.growth.doubling_bound();
  c.coercivity = std::max(2.0, 2.0 * r.sup_norm + 2.0);
  if (p.family == Family::quartic) {
    // Two-sided envelope against f(t) = t^2 (t+2)^2, derived from
    // W = d^2 * other^2 with max(d, 2|a|-d) <= other <= 2|a|+d.
    const double ru = 2.0 * r.sup_norm + 3.0;  // audited state-box radius
    const double upper = std::pow((2.0 * r.sup_norm + ru) / 2.0, 2.0);
    const double lower = std::pow((r.inf_norm + 2.0) / r.inf_norm, 2.0);
    c.envelope = 1.05 * std::max({1.0, upper, lower});
  } else {
    c.envelope = 1.0;  // min_power matches its envelope exactly
  }
  c.modulus_slope = r.grad_bound > 0.0
                        ? 1.05 * p_exp * std::pow(r.sup_norm, p_exp - 1.0) * r.grad_bound /
                              std::pow(r.inf_norm, p_exp)
                        : 0.0;
}

}  // namespace

Potential make_quartic_potential(SpatialDomain domain, std::vector<WellField> plus_wells,
                                 int state_dim) {
  Potential p;
  p.space_dim = domain.dim;
  p.state_dim = state_dim;
  p.family = Family::quartic;
  p.domain = std::move(domain);
  p.plus_wells = std::move(plus_wells);
  p.growth = GrowthFunction{GrowthFunction::Kind::quartic_envelope, 2.0, 1.0, 1.0};
  p.validate();
  finalize_symmetric(p, 4.0);
  return p;
}

Potential make_min_power_potential(SpatialDomain domain, std::vector<WellField> plus_wells,
                                   int state_dim, double q) {
  Potential p;
  p.space_dim = domain.dim;
  p.state_dim = state_dim;
  p.family = Family::min_power;
  p.q = q;
  p.domain = std::move(domain);
  p.plus_wells = std::move(plus_wells);
  p.growth = GrowthFunction{GrowthFunction::Kind::power, q, 1.0, 1.0};
  p.validate();
  finalize_symmetric(p, q);
  return p;
}

Potential make_annular_potential(AnnularSpec spec) {
  Potential p;
  p.space_dim = 1;
  p.state_dim = 2;
  p.family = Family::annular;
  p.domain = make_interval(0.0, 1.0);
  p.symmetric_wells = false;
  p.fixed_plus_well = Vec{0.0, 0.0};   // the center the geodesics wind toward
  p.fixed_minus_well = Vec{0.0, -1.0};  // bottom of the outermost circle
  p.annular = std::move(spec);
  p.growth = GrowthFunction{GrowthFunction::Kind::power, 2.0, 1.0, 1.0};
  p.validate();
  auto& c = p.constants;
  c.delta = 1.0;
  c.doubling = 4.0;
  c.coercivity = 3.0;                   // box-local: the landscape plateaus at `barrier`
  c.envelope = 1e6;                     // envelope audits fail for this family by design
  c.modulus_slope = 0.0;                // constant in x
  return p;
}

}  // namespace wellpath
