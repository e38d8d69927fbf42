#include "wellpath/sharp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>

#include "wellpath/errors.hpp"

namespace wellpath {

namespace {

double point_segment_dist(const Vec& p, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double len2 = norm2(ab);
  if (len2 <= 0.0) return dist(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return dist(p, a + t * ab);
}

double point_polyline_dist(const Vec& p, const std::vector<Vec>& line) {
  double best = std::numeric_limits<double>::infinity();
  if (line.size() == 1) return dist(p, line.front());
  for (std::size_t k = 0; k + 1 < line.size(); ++k)
    best = std::min(best, point_segment_dist(p, line[k], line[k + 1]));
  return best;
}

int orientation(const Vec& a, const Vec& b, const Vec& c) {
  const double cr = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  const double scale = 1e-12 * (1.0 + std::abs(b[0] - a[0]) + std::abs(b[1] - a[1]) +
                                std::abs(c[0] - a[0]) + std::abs(c[1] - a[1]));
  if (cr > scale) return 1;
  if (cr < -scale) return -1;
  return 0;
}

bool on_segment(const Vec& a, const Vec& b, const Vec& p) {
  return std::min(a[0], b[0]) - 1e-12 <= p[0] && p[0] <= std::max(a[0], b[0]) + 1e-12 &&
         std::min(a[1], b[1]) - 1e-12 <= p[1] && p[1] <= std::max(a[1], b[1]) + 1e-12;
}

bool segments_intersect(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

Potential restrict_to_subdomain(const Potential& pot, int k) {
  Potential r = pot;
  if (!pot.symmetric_wells) return r;
  if (k < 0 || k >= static_cast<int>(pot.plus_wells.size()))
    fail_param("subdomain index out of range");
  r.domain.breakpoints.clear();
  r.domain.split_line.clear();
  r.plus_wells = {pot.plus_wells[static_cast<std::size_t>(k)]};
  return r;
}

SharpEnergyReport energy_infty(const Potential& pot, const SharpConfig& cfg,
                               const GeodesicOptions& opts) {
  if (cfg.left_sign != -1 && cfg.left_sign != 1)
    fail_spec("sharp configuration: left phase sign must be -1 or +1");
  SharpEnergyReport rep;

  if (pot.space_dim == 1) {
    if (!cfg.interface.pts.empty())
      fail_spec("sharp configuration: 1-D domains take jump positions, not a polyline");
    const double xlo = pot.domain.lo[0], xhi = pot.domain.hi[0];
    for (std::size_t j = 0; j < cfg.jumps.size(); ++j) {
      const double xj = cfg.jumps[j];
      if (!(xj > xlo && xj < xhi)) fail_spec("sharp configuration: jump outside the domain");
      if (j > 0 && !(xj > cfg.jumps[j - 1]))
        fail_spec("sharp configuration: jump positions must be strictly increasing");
    }
    for (std::size_t j = 0; j < cfg.jumps.size(); ++j) {
      const Vec x{cfg.jumps[j]};
      const int sign = (j % 2 == 0) ? cfg.left_sign : -cfg.left_sign;
      SharpContribution part;
      part.where = x;
      part.subdomain = pot.domain.subdomain_at(x);

      int on_break = -1;
      for (std::size_t b = 0; b < pot.domain.breakpoints.size(); ++b)
        if (std::abs(cfg.jumps[j] - pot.domain.breakpoints[b]) <=
            1e-9 * (1.0 + std::abs(pot.domain.breakpoints[b])))
          on_break = static_cast<int>(b);

      if (on_break >= 0 && pot.symmetric_wells) {
        const Potential left = restrict_to_subdomain(pot, on_break);
        const Potential right = restrict_to_subdomain(pot, on_break + 1);
        part.minus = left.well(x, sign);
        part.plus = right.well(x, -sign);
        const AdaptedResult ad = adapted_distance(left, right, x, part.minus, part.plus, opts);
        part.density = ad.value;
        part.gap = ad.gap;
        part.adapted = true;
        part.meeting = ad.meeting_point;
      } else {
        part.minus = pot.well(x, sign);
        part.plus = pot.well(x, -sign);
        const GeodesicResult res = geodesic_distance(pot, x, part.minus, part.plus, opts);
        part.density = res.distance;
        part.gap = res.gap;
      }
      part.length = 1.0;
      part.value = part.density;
      rep.value += part.value;
      rep.gap += part.gap;
      rep.parts.push_back(part);
    }
    return rep;
  }

  // 2-D: polygonal interface, per-segment midpoint quadrature.
  if (!cfg.jumps.empty())
    fail_spec("sharp configuration: 2-D domains take an interface polyline, not jump positions");
  const std::vector<Vec>& pts = cfg.interface.pts;
  if (pts.empty()) return rep;
  if (pts.size() < 2) fail_spec("sharp configuration: interface needs at least 2 vertices");
  for (const Vec& p : pts)
    if (!pot.domain.contains(p)) fail_spec("sharp configuration: interface leaves the domain");
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (std::size_t k = i + 2; k + 1 < pts.size(); ++k) {
      if (i == 0 && k + 2 == pts.size() && dist(pts.front(), pts.back()) <= 1e-12) continue;
      if (segments_intersect(pts[i], pts[i + 1], pts[k], pts[k + 1]))
        fail_spec("sharp configuration: interface polyline self-intersects");
    }

  const bool has_split = pot.domain.split_line.size() >= 2 && pot.symmetric_wells;
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const Vec a = pts[s], b = pts[s + 1];
    const double len = dist(a, b);
    if (len <= 0.0) fail_spec("sharp configuration: interface has a zero-length segment");
    const Vec mid = 0.5 * (a + b);

    SharpContribution part;
    part.where = mid;
    part.length = len;
    part.subdomain = pot.domain.subdomain_at(mid);

    const double scale = 1e-9 * (1.0 + norm(mid));
    const bool on_split = has_split &&
                          point_polyline_dist(a, pot.domain.split_line) <= scale &&
                          point_polyline_dist(b, pot.domain.split_line) <= scale;
    if (on_split) {
      const Potential left = restrict_to_subdomain(pot, 0);
      const Potential right = restrict_to_subdomain(pot, 1);
      part.minus = left.well(mid, cfg.left_sign);
      part.plus = right.well(mid, -cfg.left_sign);
      const AdaptedResult ad = adapted_distance(left, right, mid, part.minus, part.plus, opts);
      part.density = ad.value;
      part.gap = ad.gap * len;
      part.adapted = true;
      part.meeting = ad.meeting_point;
    } else {
      part.minus = pot.well(mid, cfg.left_sign);
      part.plus = pot.well(mid, -cfg.left_sign);
      const GeodesicResult res = geodesic_distance(pot, mid, part.minus, part.plus, opts);
      part.density = res.distance;
      part.gap = res.gap * len;
    }
    part.value = part.density * len;
    rep.value += part.value;
    rep.gap += part.gap;
    rep.parts.push_back(part);
  }
  return rep;
}

PhaseAssignment assign_phases(const Potential& pot, const Field& field, double tol) {
  if (!(tol > 0.0)) fail_param("phase assignment tolerance must be positive");
  if (field.state_dim != pot.state_dim)
    fail_param("field and potential state dimensions differ");
  PhaseAssignment out;
  out.indicator = field.space_dim == 1
                      ? Field::make_1d(field.lo[0], field.hi[0], field.nx, 1)
                      : Field::make_2d(field.lo, field.hi, field.nx, field.ny, 1);
  double zero_weight = 0.0, total_weight = 0.0;
  for (int j = 0; j < field.nodes_y(); ++j)
    for (int i = 0; i < field.nodes_x(); ++i) {
      const Vec pos = field.node_pos(i, j);
      const Vec u = field.get(i, j);
      const double dm = dist(u, pot.well(pos, -1));
      const double dp = dist(u, pot.well(pos, +1));
      double v = 0.0;
      if (std::min(dm, dp) <= tol) v = dp <= dm ? 1.0 : -1.0;
      out.indicator.set(i, j, Vec{v});
      const double w = field.trap_weight(i, j);
      total_weight += w;
      if (v == 0.0) zero_weight += w;
    }
  out.violation_fraction = zero_weight / total_weight;
  return out;
}

// ---------------------------------------------------------------------------
// z table
// ---------------------------------------------------------------------------

ZTable build_z_table(const Potential& pot, int per_unit) {
  if (!pot.has_frame()) fail_param("the z field needs a symmetric well frame");
  if (per_unit < 2) fail_param("z table needs at least 2 nodes per unit");

  ZTable t;
  t.state_dim = pot.state_dim;
  t.per_unit = per_unit;
  t.delta = 0.5 * pot.constants.delta;

  // Clamp level: physical truncation at twice the largest well size, mapped
  // into frame units (wells sit at +-e1 there).
  double sup_a = 0.0;
  {
    const int K = 129;
    for (int j = 0; j <= (pot.space_dim == 2 ? K : 0); ++j)
      for (int i = 0; i <= K; ++i) {
        Vec x{pot.domain.lo[0] + (pot.domain.hi[0] - pot.domain.lo[0]) * i / K};
        if (pot.space_dim == 2)
          x[1] = pot.domain.lo[1] + (pot.domain.hi[1] - pot.domain.lo[1]) * j / K;
        sup_a = std::max(sup_a, norm(pot.well(x, +1)));
      }
  }
  const double half_sep = 0.5 * pot.constants.delta;
  t.box_half_width = std::max(2.0, std::ceil(2.0 * sup_a / std::max(half_sep, 1e-12)));

  const int side = 2 * static_cast<int>(t.box_half_width) * per_unit + 1;
  t.nodes_per_axis = side;
  const double h = 1.0 / per_unit;
  const double lo = -t.box_half_width;
  const int M = t.state_dim;

  const auto coord = [&](int idx) { return lo + h * idx; };
  const auto wtilde = [&](const Vec& v) {
    Vec vm = v, vp = v;
    vm[0] += 1.0;
    vp[0] -= 1.0;
    const double d = std::min(norm(vm), norm(vp));
    return pot.growth.eval(t.delta * d);
  };

  const std::size_t count = M == 1   ? static_cast<std::size_t>(side)
                            : M == 2 ? static_cast<std::size_t>(side) * side
                                     : static_cast<std::size_t>(side) * side * side;
  std::vector<double> g(count);
  t.cap = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    Vec v;
    std::size_t rem = n;
    for (int c = 0; c < M; ++c) {
      v[c] = coord(static_cast<int>(rem % static_cast<std::size_t>(side)));
      rem /= static_cast<std::size_t>(side);
    }
    const double w = wtilde(v);
    t.cap = std::max(t.cap, w);
    g[n] = 2.0 * std::sqrt(w);
  }

  t.values.assign(count, 0.0);
  const int i_minus = (static_cast<int>(t.box_half_width) - 1) * per_unit;  // v = -e1
  const int i_plus = (static_cast<int>(t.box_half_width) + 1) * per_unit;   // v = +e1

  if (M == 1) {
    // Cumulative trapezoid of the weight, distance = |cum(v) - cum(-1)|.
    std::vector<double> cum(count, 0.0);
    for (std::size_t i = 1; i < count; ++i)
      cum[i] = cum[i - 1] + 0.5 * h * (g[i - 1] + g[i]);
    for (std::size_t i = 0; i < count; ++i)
      t.values[i] = std::abs(cum[i] - cum[static_cast<std::size_t>(i_minus)]);
    t.z_max = t.values[static_cast<std::size_t>(i_plus)];
    return t;
  }

  // Single-source shortest path from -e1; edge weight = length * mean of the
  // endpoint weights. 8-neighborhood in the plane, 6-neighborhood in 3-D.
  std::vector<std::array<int, 3>> steps;
  if (M == 2) {
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx)
        if (dx || dy) steps.push_back({dx, dy, 0});
  } else {
    steps = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  }

  const auto index_of = [&](int i, int j, int k) {
    return (static_cast<std::size_t>(k) * side + static_cast<std::size_t>(j)) * side +
           static_cast<std::size_t>(i);
  };
  const std::size_t src = index_of(i_minus, static_cast<int>(t.box_half_width) * per_unit,
                                   M == 3 ? static_cast<int>(t.box_half_width) * per_unit : 0);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist_v(count, kInf);
  using QE = std::pair<double, std::size_t>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  dist_v[src] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    const auto [d, n] = pq.top();
    pq.pop();
    if (d > dist_v[n]) continue;
    const int i = static_cast<int>(n % static_cast<std::size_t>(side));
    const int j = static_cast<int>((n / static_cast<std::size_t>(side)) % static_cast<std::size_t>(side));
    const int k = M == 3 ? static_cast<int>(n / (static_cast<std::size_t>(side) * side)) : 0;
    for (const auto& st : steps) {
      const int ii = i + st[0], jj = j + st[1], kk = k + st[2];
      if (ii < 0 || ii >= side || jj < 0 || jj >= side) continue;
      if (M == 3 && (kk < 0 || kk >= side)) continue;
      const std::size_t m = index_of(ii, jj, kk);
      const double len = h * std::sqrt(double(st[0] * st[0] + st[1] * st[1] + st[2] * st[2]));
      const double nd = d + len * 0.5 * (g[n] + g[m]);
      if (nd < dist_v[m]) {
        dist_v[m] = nd;
        pq.push({nd, m});
      }
    }
  }
  t.values = std::move(dist_v);
  t.z_max = t.values[index_of(i_plus, static_cast<int>(t.box_half_width) * per_unit,
                              M == 3 ? static_cast<int>(t.box_half_width) * per_unit : 0)];
  return t;
}

double ZTable::eval(const Vec& w) const {
  const double h = 1.0 / per_unit;
  const int side = nodes_per_axis;
  int base[3] = {0, 0, 0};
  double frac[3] = {0.0, 0.0, 0.0};
  for (int c = 0; c < state_dim; ++c) {
    const double clamped = std::clamp(w[c], -box_half_width, box_half_width);
    double pos = (clamped + box_half_width) / h;
    int b = static_cast<int>(std::floor(pos));
    b = std::clamp(b, 0, side - 2);
    base[c] = b;
    frac[c] = std::clamp(pos - b, 0.0, 1.0);
  }
  const auto at = [&](int i, int j, int k) {
    std::size_t n = static_cast<std::size_t>(i);
    if (state_dim >= 2) n += static_cast<std::size_t>(j) * side;
    if (state_dim == 3) n += static_cast<std::size_t>(k) * side * side;
    return values[n];
  };
  double z = 0.0;
  const int corners = 1 << state_dim;
  for (int c = 0; c < corners; ++c) {
    double wgt = 1.0;
    int idx[3] = {base[0], base[1], base[2]};
    for (int d = 0; d < state_dim; ++d) {
      const bool hi = (c >> d) & 1;
      wgt *= hi ? frac[d] : 1.0 - frac[d];
      if (hi) idx[d] += 1;
    }
    z += wgt * at(idx[0], idx[1], idx[2]);
  }
  return std::clamp(z, 0.0, z_max);
}

Field phase_indicator(const Potential& pot, const Field& field, const ZTable& table) {
  if (field.state_dim != pot.state_dim)
    fail_param("field and potential state dimensions differ");
  Field z = field.space_dim == 1 ? Field::make_1d(field.lo[0], field.hi[0], field.nx, 1)
                                 : Field::make_2d(field.lo, field.hi, field.nx, field.ny, 1);
  for (int j = 0; j < field.nodes_y(); ++j)
    for (int i = 0; i < field.nodes_x(); ++i) {
      const Vec w = pot.frame_invert(field.node_pos(i, j), field.get(i, j));
      z.set(i, j, Vec{table.eval(w)});
    }
  return z;
}

Field phase_indicator(const Potential& pot, const Field& field, int per_unit) {
  return phase_indicator(pot, field, build_z_table(pot, per_unit));
}

double total_variation(const Field& field) {
  if (field.state_dim != 1) fail_param("total variation expects a scalar field");
  double tv = 0.0;
  if (field.space_dim == 1) {
    for (int i = 0; i < field.nx; ++i)
      tv += std::abs(field.get(i + 1)[0] - field.get(i)[0]);
    return tv;
  }
  const double hx = field.hx(), hy = field.hy();
  for (int j = 0; j <= field.ny; ++j) {
    const double wj = (j == 0 || j == field.ny) ? 0.5 : 1.0;
    for (int i = 0; i < field.nx; ++i)
      tv += wj * hy * std::abs(field.get(i + 1, j)[0] - field.get(i, j)[0]);
  }
  for (int i = 0; i <= field.nx; ++i) {
    const double wi = (i == 0 || i == field.nx) ? 0.5 : 1.0;
    for (int j = 0; j < field.ny; ++j)
      tv += wi * hx * std::abs(field.get(i, j + 1)[0] - field.get(i, j)[0]);
  }
  return tv;
}

}  // namespace wellpath
