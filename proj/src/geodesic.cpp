#include "wellpath/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "wellpath/errors.hpp"
#include "wellpath/rng.hpp"

namespace wellpath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Worst-case ratio between a grid path and the straight chord it shadows:
// sec(pi/8) for the planar 8-neighborhood, sqrt(3) for the 3-D 6-neighborhood.
double chord_factor(int m) { return m == 2 ? 1.0823922002923940 : 1.7320508075688772; }

struct GridBox {
  int m = 2;
  int n = 0;  // nodes per axis
  Vec lo{}, hi{};
  double h[3] = {0.0, 0.0, 0.0};

  void init(int m_, int n_, const Vec& lo_, const Vec& hi_) {
    m = m_;
    n = n_;
    lo = lo_;
    hi = hi_;
    for (int d = 0; d < m; ++d) h[d] = (hi[d] - lo[d]) / (n - 1);
  }
  std::int64_t count() const {
    std::int64_t c = n;
    for (int d = 1; d < m; ++d) c *= n;
    return c;
  }
  int flat(const int idx[3]) const {
    int f = idx[m - 1];
    for (int d = m - 2; d >= 0; --d) f = f * n + idx[d];
    return f;
  }
  void unflat(int f, int idx[3]) const {
    for (int d = 0; d < m; ++d) {
      idx[d] = f % n;
      f /= n;
    }
    for (int d = m; d < 3; ++d) idx[d] = 0;
  }
  Vec pos(const int idx[3]) const {
    Vec u;
    for (int d = 0; d < m; ++d) u[d] = lo[d] + h[d] * idx[d];
    return u;
  }
  int nearest(const Vec& u) const {
    int idx[3] = {0, 0, 0};
    for (int d = 0; d < m; ++d) {
      const int i = static_cast<int>(std::lround((u[d] - lo[d]) / h[d]));
      idx[d] = std::clamp(i, 0, n - 1);
    }
    return flat(idx);
  }
};

std::vector<std::array<int, 3>> neighbor_offsets(int m) {
  std::vector<std::array<int, 3>> offs;
  if (m == 2) {
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di)
        if (di != 0 || dj != 0) offs.push_back({di, dj, 0});
  } else {
    for (int d = 0; d < 3; ++d)
      for (int s = -1; s <= 1; s += 2) {
        std::array<int, 3> o{0, 0, 0};
        o[static_cast<std::size_t>(d)] = s;
        offs.push_back(o);
      }
  }
  return offs;
}

struct DijkstraOut {
  std::vector<double> dist;
  std::vector<int> parent;
};

// mode 0: midpoint edge weights (upper-estimate graph). mode 1: pessimistic
// edge weights min(w at both ends and midpoint) / chord factor (lower bound).
DijkstraOut dijkstra(const Potential& pot, const Vec& x, double cap, const GridBox& grid,
                     int source, int target, int mode) {
  const auto offs = neighbor_offsets(grid.m);
  const std::int64_t count = grid.count();
  DijkstraOut out;
  out.dist.assign(static_cast<std::size_t>(count), kInf);
  out.parent.assign(static_cast<std::size_t>(count), -1);
  std::vector<char> done(static_cast<std::size_t>(count), 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  out.dist[static_cast<std::size_t>(source)] = 0.0;
  pq.push({0.0, source});
  const double cf = chord_factor(grid.m);

  while (!pq.empty()) {
    const auto [du, node] = pq.top();
    pq.pop();
    if (done[static_cast<std::size_t>(node)]) continue;
    done[static_cast<std::size_t>(node)] = 1;
    if (node == target) break;
    int idx[3];
    grid.unflat(node, idx);
    const Vec upos = grid.pos(idx);
    const double w_node = geodesic_weight(pot, x, upos, cap);
    for (const auto& o : offs) {
      int nidx[3] = {idx[0] + o[0], idx[1] + o[1], idx[2] + o[2]};
      bool ok = true;
      for (int d = 0; d < grid.m; ++d)
        if (nidx[d] < 0 || nidx[d] >= grid.n) ok = false;
      if (!ok) continue;
      const int nb = grid.flat(nidx);
      if (done[static_cast<std::size_t>(nb)]) continue;
      const Vec vpos = grid.pos(nidx);
      const double elen = dist(upos, vpos);
      double ew;
      if (mode == 0) {
        ew = geodesic_weight(pot, x, lerp(upos, vpos, 0.5), cap) * elen;
      } else {
        const double wmin = std::min({w_node, geodesic_weight(pot, x, vpos, cap),
                                      geodesic_weight(pot, x, lerp(upos, vpos, 0.5), cap)});
        ew = wmin * elen / cf;
      }
      const double nd = du + ew;
      if (nd < out.dist[static_cast<std::size_t>(nb)]) {
        out.dist[static_cast<std::size_t>(nb)] = nd;
        out.parent[static_cast<std::size_t>(nb)] = node;
        pq.push({nd, nb});
      }
    }
  }
  return out;
}

// Directional slab projection bound: for a unit direction e, any curve from
// p to q sweeps every hyperplane e.u = s between the endpoint projections,
// so its cost is at least the integral over [e.p, e.q] of the per-slab
// minimum weight. Each slab's minimum is sampled on its center cross-section
// (midpoint rule; the chord crossing point guarantees an in-box sample).
double slab_bound(const Potential& pot, const Vec& x, double cap, const GridBox& grid,
                  const Vec& p, const Vec& q) {
  std::vector<Vec> dirs;
  const Vec chord = q - p;
  const double clen = norm(chord);
  if (clen > 1e-12) dirs.push_back((1.0 / clen) * chord);
  for (int d = 0; d < grid.m; ++d) {
    Vec e;
    e[d] = 1.0;
    dirs.push_back(e);
  }
  if (grid.m == 2) {
    const double s = 1.0 / std::sqrt(2.0);
    dirs.push_back(Vec{s, s});
    dirs.push_back(Vec{s, -s});
  }

  const Vec center = 0.5 * (grid.lo + grid.hi);
  const double radius = norm(0.5 * (grid.hi - grid.lo));
  const int n_slabs = 256;
  const int nt = grid.m == 2 ? 513 : 49;  // transverse samples per axis
  const auto in_box = [&](const Vec& u) {
    for (int d = 0; d < grid.m; ++d)
      if (u[d] < grid.lo[d] - 1e-12 || u[d] > grid.hi[d] + 1e-12) return false;
    return true;
  };

  double best = 0.0;
  for (const auto& e : dirs) {
    const double sp = dot(e, p), sq = dot(e, q);
    const double s0 = std::min(sp, sq), s1 = std::max(sp, sq);
    const double width = s1 - s0;
    if (width < 1e-12) continue;
    const double ds = width / n_slabs;

    // Orthonormal transverse frame for the cross-section sampling.
    Vec f1{}, f2{};
    {
      int seed = 0;
      double smallest = std::abs(e[0]);
      for (int d = 1; d < grid.m; ++d)
        if (std::abs(e[d]) < smallest) {
          smallest = std::abs(e[d]);
          seed = d;
        }
      Vec s;
      s[seed] = 1.0;
      f1 = s - dot(s, e) * e;
      f1 = (1.0 / norm(f1)) * f1;
      if (grid.m == 3)
        f2 = Vec{e[1] * f1[2] - e[2] * f1[1], e[2] * f1[0] - e[0] * f1[2],
                 e[0] * f1[1] - e[1] * f1[0]};
    }

    double bound = 0.0;
    for (int j = 0; j < n_slabs; ++j) {
      const double s_mid = s0 + (j + 0.5) * ds;
      // The chord's crossing point keeps every slab sampled inside the box.
      const Vec u0 = lerp(p, q, (s_mid - sp) / (sq - sp));
      double m = geodesic_weight(pot, x, u0, cap);
      const Vec base = center + (s_mid - dot(e, center)) * e;
      if (grid.m == 2) {
        for (int a = 0; a < nt; ++a) {
          const Vec u = base + (radius * (2.0 * a / (nt - 1) - 1.0)) * f1;
          if (in_box(u)) m = std::min(m, geodesic_weight(pot, x, u, cap));
        }
      } else {
        for (int a = 0; a < nt; ++a)
          for (int b = 0; b < nt; ++b) {
            const Vec u = base + (radius * (2.0 * a / (nt - 1) - 1.0)) * f1 +
                          (radius * (2.0 * b / (nt - 1) - 1.0)) * f2;
            if (in_box(u)) m = std::min(m, geodesic_weight(pot, x, u, cap));
          }
      }
      bound += m * ds;
    }
    best = std::max(best, bound);
  }
  return best;
}

double segment_cost(const Potential& pot, const Vec& x, double cap, const Vec& a, const Vec& b,
                    int subdiv) {
  const double len = dist(a, b);
  if (len == 0.0) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < subdiv; ++i) {
    const double s = (i + 0.5) / subdiv;
    sum += geodesic_weight(pot, x, lerp(a, b, s), cap);
  }
  return sum * len / subdiv;
}

double polyline_cost_fixed(const Potential& pot, const Vec& x, double cap, const Polyline& c,
                           int subdiv) {
  double total = 0.0;
  for (std::size_t i = 1; i < c.pts.size(); ++i)
    total += segment_cost(pot, x, cap, c.pts[i - 1], c.pts[i], subdiv);
  return total;
}

// One golden-section line search along a coordinate axis; returns the best
// offset in [-h, h] (0 when no improvement).
template <typename F>
double golden_axis(F f, double h) {
  double a = -h, b = h;
  const double r1 = 0.3819660112501051, r2 = 0.6180339887498949;
  double c = a + r1 * (b - a);
  double d = a + r2 * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 24; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = a + r1 * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r2 * (b - a);
      fd = f(d);
    }
  }
  const double t = fc < fd ? c : d;
  const double ft = std::min(fc, fd);
  return ft < f(0.0) - 1e-15 ? t : 0.0;
}

void descent_sweep(const Potential& pot, const Vec& x, double cap, Polyline& path, int subdiv) {
  const int m = pot.state_dim;
  const std::size_t V = path.pts.size();
  for (std::size_t i = 1; i + 1 < V; ++i) {
    const Vec& prev = path.pts[i - 1];
    const Vec& next = path.pts[i + 1];
    for (int axis = 0; axis < m; ++axis) {
      const double window =
          0.75 * std::min(dist(prev, path.pts[i]), dist(path.pts[i], next)) + 1e-12;
      Vec base = path.pts[i];
      auto local = [&](double t) {
        Vec v = base;
        v[axis] += t;
        return segment_cost(pot, x, cap, prev, v, subdiv) +
               segment_cost(pot, x, cap, v, next, subdiv);
      };
      const double t = golden_axis(local, window);
      if (t != 0.0) path.pts[i][axis] += t;
    }
  }
}

GeodesicResult solve_scalar(const Potential& pot, const Vec& x, const Vec& p, const Vec& q,
                            const GeodesicOptions& opts) {
  GeodesicResult res;
  res.oracle = true;
  const ScalarSigma s = scalar_sigma(pot, x, p[0], q[0], opts.cap, 1e-11);
  res.distance = s.value;
  res.quadrature_error = s.error_estimate;
  res.lower_bound = std::max(0.0, s.value - 2.0 * s.error_estimate);
  res.lb_dijkstra = res.lb_slab = res.lower_bound;
  res.gap = res.distance - res.lower_bound;
  res.certified = res.gap <= opts.eps_cert;
  res.euclid_length = std::abs(q[0] - p[0]);
  const int samples = 65;
  res.path.pts.reserve(samples);
  for (int i = 0; i < samples; ++i)
    res.path.pts.push_back(lerp(p, q, static_cast<double>(i) / (samples - 1)));
  res.box_lo = Vec{std::min(p[0], q[0])};
  res.box_hi = Vec{std::max(p[0], q[0])};
  return res;
}

}  // namespace

GeodesicResult geodesic_distance(const Potential& pot, const Vec& x, const Vec& p, const Vec& q,
                                 const GeodesicOptions& opts) {
  if (!pot.domain.contains(x)) fail_param("geodesic query point lies outside the domain");
  if (opts.grid_n < 9) fail_param("geodesic grid needs at least 9 nodes per axis");
  if (opts.vertices < 5) fail_param("geodesic descent needs at least 5 vertices");
  if (!(opts.cap > 0.0)) fail_param("weight cap must be positive");

  GeodesicResult res;
  if (opts.run_growth_audit)
    res.growth_audit_ok = audit_growth(pot, opts.growth_audit_samples).ok;

  if (dist(p, q) == 0.0) {
    res.path.pts = {p, q};
    res.certified = true;
    res.box_lo = p;
    res.box_hi = q;
    return res;
  }
  if (pot.state_dim == 1) {
    const bool audit_ok = res.growth_audit_ok;
    res = solve_scalar(pot, x, p, q, opts);
    res.growth_audit_ok = audit_ok;
    res.certified = res.certified && res.gap <= opts.eps_cert;
    return res;
  }

  // ----- search box ---------------------------------------------------
  Vec blo, bhi;
  if (opts.box_set) {
    blo = opts.box_lo;
    bhi = opts.box_hi;
    for (int d = 0; d < pot.state_dim; ++d)
      if (p[d] < blo[d] || p[d] > bhi[d] || q[d] < blo[d] || q[d] > bhi[d])
        fail_param("search box must contain both endpoints");
  } else {
    const Vec anchors[4] = {p, q, pot.well(x, +1), pot.well(x, -1)};
    for (int d = 0; d < pot.state_dim; ++d) {
      double lo = kInf, hi = -kInf;
      for (const auto& a : anchors) {
        lo = std::min(lo, a[d]);
        hi = std::max(hi, a[d]);
      }
      blo[d] = lo;
      bhi[d] = hi;
    }
    double diam = 0.0;
    for (int d = 0; d < pot.state_dim; ++d) diam = std::max(diam, bhi[d] - blo[d]);
    const double pad = opts.box_pad >= 0.0 ? opts.box_pad : std::max(0.75, 0.25 * diam);
    for (int d = 0; d < pot.state_dim; ++d) {
      blo[d] -= pad;
      bhi[d] += pad;
    }
  }
  res.box_lo = blo;
  res.box_hi = bhi;

  // ----- Dijkstra initialization ---------------------------------------
  GridBox grid;
  grid.init(pot.state_dim, opts.grid_n, blo, bhi);
  const int src = grid.nearest(p);
  const int dst = grid.nearest(q);
  Polyline path;
  if (src == dst) {
    path.pts = {p, q};
  } else {
    const DijkstraOut dj = dijkstra(pot, x, opts.cap, grid, src, dst, 0);
    if (!std::isfinite(dj.dist[static_cast<std::size_t>(dst)]))
      fail_numeric("grid initialization failed to reach the target state");
    res.dijkstra_value = dj.dist[static_cast<std::size_t>(dst)];
    std::vector<int> chain;
    for (int node = dst; node != -1; node = dj.parent[static_cast<std::size_t>(node)])
      chain.push_back(node);
    std::reverse(chain.begin(), chain.end());
    path.pts.reserve(chain.size() + 2);
    path.pts.push_back(p);
    int idx[3];
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
      grid.unflat(chain[i], idx);
      path.pts.push_back(grid.pos(idx));
    }
    path.pts.push_back(q);
  }
  if (path.pts.size() < 3) path.pts = {p, lerp(p, q, 0.5), q};

  // ----- local descent --------------------------------------------------
  const int V = opts.vertices;
  path = path.resample(V);
  double energy = polyline_cost_fixed(pot, x, opts.cap, path, opts.descent_subdiv);
  int quiet = 0;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    // Guarded respacing: keep vertices equidistributed in arc length unless
    // doing so would raise the energy.
    Polyline respaced = path.resample(V);
    const double re = polyline_cost_fixed(pot, x, opts.cap, respaced, opts.descent_subdiv);
    if (re <= energy) {
      path = std::move(respaced);
      energy = re;
    }
    descent_sweep(pot, x, opts.cap, path, opts.descent_subdiv);
    const double after = polyline_cost_fixed(pot, x, opts.cap, path, opts.descent_subdiv);
    const double improve = energy - after;
    energy = after;
    res.sweeps = sweep + 1;
    if (improve <= opts.sweep_tol * (1.0 + std::abs(after))) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }

  // ----- final value and certification ----------------------------------
  const CurveCost fine = curve_cost(pot, x, path, opts.cap, {});
  res.distance = fine.value;
  res.quadrature_error = fine.error_estimate;
  res.path = std::move(path);
  res.euclid_length = res.path.length();

  if (opts.compute_lower_bound) {
    const int lb_n = opts.lb_grid_n > 0 ? opts.lb_grid_n : 2 * opts.grid_n - 1;
    GridBox fine_grid;
    fine_grid.init(pot.state_dim, lb_n, blo, bhi);
    const int fsrc = fine_grid.nearest(p);
    const int fdst = fine_grid.nearest(q);
    if (fsrc != fdst) {
      const DijkstraOut lbd = dijkstra(pot, x, opts.cap, fine_grid, fsrc, fdst, 1);
      res.lb_dijkstra = std::isfinite(lbd.dist[static_cast<std::size_t>(fdst)])
                            ? lbd.dist[static_cast<std::size_t>(fdst)]
                            : 0.0;
    }
    res.lb_slab = slab_bound(pot, x, opts.cap, fine_grid, p, q);
    res.lower_bound = std::max(res.lb_dijkstra, res.lb_slab);
    res.lower_bound = std::min(res.lower_bound, res.distance);  // never report LB > value
    res.gap = std::max(0.0, res.distance - res.lower_bound);
    res.certified = res.gap <= opts.eps_cert;
  } else {
    res.lower_bound = 0.0;
    res.gap = res.distance;
    res.certified = false;
  }
  return res;
}

TruncationCap derive_truncation_cap(const Potential& pot, const Vec& x, const Vec& p,
                                    const Vec& q) {
  Polyline straight;
  straight.pts = {p, q};
  const double budget = 3.0 * (curve_cost(pot, x, straight).value + 1.0);
  const double from_growth = pot.growth.left_inverse_of_antiderivative(budget);
  double radius = std::max({from_growth, norm(p), norm(q), norm(pot.well(x, +1)),
                            norm(pot.well(x, -1))}) +
                  1.0;
  TruncationCap tc;
  tc.a_priori_radius = radius;
  tc.sup_w = pot.sup_on_box(x, radius, 65);
  tc.cap = 4.0 * tc.sup_w;
  return tc;
}

AdaptedResult adapted_distance(const Potential& left, const Potential& right, const Vec& x,
                               const Vec& p, const Vec& q, const GeodesicOptions& opts) {
  if (left.state_dim != right.state_dim)
    fail_param("adapted distance needs matching state dimensions");
  AdaptedResult out;

  if (left.state_dim == 1) {
    // Dense scan of the handover state, then a golden refinement. The scan
    // range covers the endpoints and all wells with a unit margin.
    double lo = std::min(p[0], q[0]), hi = std::max(p[0], q[0]);
    for (const auto* pot : {&left, &right}) {
      for (int s : {+1, -1}) {
        const double w = pot->well(x, s)[0];
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
    }
    lo -= 1.0;
    hi += 1.0;
    auto h = [&](double r) {
      return scalar_sigma(left, x, p[0], r, opts.cap).value +
             scalar_sigma(right, x, r, q[0], opts.cap).value;
    };
    const int n = 257;
    double best_r = p[0], best = h(p[0]);
    const double hq = h(q[0]);
    if (hq < best) {
      best = hq;
      best_r = q[0];
    }
    for (int i = 0; i <= n; ++i) {
      const double r = lo + (hi - lo) * i / n;
      const double v = h(r);
      if (v < best) {
        best = v;
        best_r = r;
      }
    }
    const double step = (hi - lo) / n;
    double a = best_r - step, b = best_r + step;
    const double r1 = 0.3819660112501051, r2 = 0.6180339887498949;
    double c = a + r1 * (b - a), d = a + r2 * (b - a);
    double fc = h(c), fd = h(d);
    for (int it = 0; it < 60; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = a + r1 * (b - a);
        fc = h(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + r2 * (b - a);
        fd = h(d);
      }
    }
    if (std::min(fc, fd) < best) {
      best_r = fc < fd ? c : d;
    }
    const ScalarSigma sl = scalar_sigma(left, x, p[0], best_r, opts.cap);
    const ScalarSigma sr = scalar_sigma(right, x, best_r, q[0], opts.cap);
    out.left_value = sl.value;
    out.right_value = sr.value;
    out.value = sl.value + sr.value;
    out.meeting_point = Vec{best_r};
    out.gap = 2.0 * (sl.error_estimate + sr.error_estimate);
    return out;
  }

  // Multi-component states: coarse scan over a candidate grid (plus the two
  // endpoints), then one full-budget evaluation at the best handover state.
  GeodesicOptions coarse = opts;
  coarse.grid_n = 33;
  coarse.vertices = 33;
  coarse.max_sweeps = 10;
  coarse.compute_lower_bound = false;
  coarse.run_growth_audit = false;

  Vec blo, bhi;
  {
    std::vector<Vec> anchors{p, q, left.well(x, +1), left.well(x, -1), right.well(x, +1),
                             right.well(x, -1)};
    for (int d = 0; d < left.state_dim; ++d) {
      double lo = kInf, hi = -kInf;
      for (const auto& a : anchors) {
        lo = std::min(lo, a[d]);
        hi = std::max(hi, a[d]);
      }
      blo[d] = lo - 0.5;
      bhi[d] = hi + 0.5;
    }
  }
  auto coarse_pair = [&](const Vec& r) {
    return geodesic_distance(left, x, p, r, coarse).distance +
           geodesic_distance(right, x, r, q, coarse).distance;
  };
  Vec best_r = p;
  double best = coarse_pair(p);
  {
    const double vq = coarse_pair(q);
    if (vq < best) {
      best = vq;
      best_r = q;
    }
    const int per_axis = left.state_dim == 2 ? 7 : 5;
    int idx[3] = {0, 0, 0};
    const int total = static_cast<int>(std::pow(per_axis, left.state_dim));
    for (int f = 0; f < total; ++f) {
      int rem = f;
      Vec r;
      for (int d = 0; d < left.state_dim; ++d) {
        idx[d] = rem % per_axis;
        rem /= per_axis;
        r[d] = blo[d] + (bhi[d] - blo[d]) * idx[d] / (per_axis - 1);
      }
      const double v = coarse_pair(r);
      if (v < best) {
        best = v;
        best_r = r;
      }
    }
  }
  const GeodesicResult fl = geodesic_distance(left, x, p, best_r, opts);
  const GeodesicResult fr = geodesic_distance(right, x, best_r, q, opts);
  out.left_value = fl.distance;
  out.right_value = fr.distance;
  out.value = fl.distance + fr.distance;
  out.meeting_point = best_r;
  out.gap = fl.gap + fr.gap;
  return out;
}

LocalityReport verify_locality(const Potential& pot, const Vec& x, const GeodesicResult& res,
                               double eps_slack, int n_checks, std::uint64_t seed,
                               const GeodesicOptions& base) {
  LocalityReport rep;
  if (res.path.pts.size() < 2) return rep;
  const double L = res.path.length();
  if (L <= 0.0) return rep;
  Rng rng(seed);

  GeodesicOptions sub = base;
  sub.grid_n = std::max(33, base.grid_n / 2);
  sub.vertices = std::max(25, base.vertices / 2);
  sub.max_sweeps = 16;
  sub.compute_lower_bound = false;
  sub.run_growth_audit = false;

  for (int k = 0; k < n_checks; ++k) {
    double t0 = rng.uniform(0.0, L);
    double t1 = rng.uniform(0.0, L);
    if (t1 < t0) std::swap(t0, t1);
    if (t1 - t0 < 0.02 * L) {
      t1 = std::min(L, t0 + 0.02 * L);
      t0 = std::max(0.0, t1 - 0.02 * L);
    }
    const Polyline piece = res.path.slice_by_arc(t0, t1);
    const double e_sub = curve_cost(pot, x, piece, base.cap).value;

    double d_sub;
    if (pot.state_dim == 1) {
      d_sub = scalar_sigma(pot, x, piece.pts.front()[0], piece.pts.back()[0], base.cap).value;
    } else {
      // Search box: the sub-curve's bounding box with proportional padding.
      Vec blo, bhi;
      for (int d = 0; d < pot.state_dim; ++d) {
        double lo = kInf, hi = -kInf;
        for (const auto& v : piece.pts) {
          lo = std::min(lo, v[d]);
          hi = std::max(hi, v[d]);
        }
        blo[d] = lo;
        bhi[d] = hi;
      }
      double diam = 0.0;
      for (int d = 0; d < pot.state_dim; ++d) diam = std::max(diam, bhi[d] - blo[d]);
      const double pad = std::max(0.5, 0.5 * diam);
      for (int d = 0; d < pot.state_dim; ++d) {
        blo[d] -= pad;
        bhi[d] += pad;
      }
      GeodesicOptions so = sub;
      so.box_set = true;
      so.box_lo = blo;
      so.box_hi = bhi;
      d_sub = geodesic_distance(pot, x, piece.pts.front(), piece.pts.back(), so).distance;
    }

    ++rep.checks;
    const double excess = e_sub - d_sub - eps_slack - 1e-7 * (1.0 + std::abs(e_sub));
    if (excess > 0.0) {
      ++rep.violations;
      rep.worst_excess = std::max(rep.worst_excess, excess);
    }
  }
  return rep;
}

}  // namespace wellpath
