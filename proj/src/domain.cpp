#include "wellpath/domain.hpp"

#include <algorithm>
#include <cmath>

#include "wellpath/errors.hpp"

namespace wellpath {

namespace {

// Orientation of point p relative to segment a->b: >0 left, <0 right, 0 on.
double cross2(const Vec& a, const Vec& b, const Vec& p) {
  return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
}

bool segments_properly_intersect(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  const double d1 = cross2(c, d, a);
  const double d2 = cross2(c, d, b);
  const double d3 = cross2(a, b, c);
  const double d4 = cross2(a, b, d);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double point_segment_dist2(const Vec& p, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double len2 = norm2(ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm2(p - (a + t * ab));
}

}  // namespace

int SpatialDomain::subdomain_count() const {
  if (dim == 1) return static_cast<int>(breakpoints.size()) + 1;
  return split_line.size() >= 2 ? 2 : 1;
}

int SpatialDomain::subdomain_at(const Vec& x) const {
  if (dim == 1) {
    // Index of the first breakpoint strictly above x; points on a breakpoint
    // resolve to the lower subdomain.
    int idx = 0;
    for (double b : breakpoints) {
      if (x[0] > b)
        ++idx;
      else
        break;
    }
    return idx;
  }
  if (split_line.size() < 2) return 0;
  // Side of the nearest split-line segment; on the line resolves to index 0.
  double best = 1e300;
  double side = 0.0;
  for (size_t i = 0; i + 1 < split_line.size(); ++i) {
    const double d2 = point_segment_dist2(x, split_line[i], split_line[i + 1]);
    if (d2 < best) {
      best = d2;
      side = cross2(split_line[i], split_line[i + 1], x);
    }
  }
  return side >= 0.0 ? 0 : 1;
}

bool SpatialDomain::contains(const Vec& x) const {
  for (int j = 0; j < dim; ++j)
    if (x[j] < lo[j] || x[j] > hi[j]) return false;
  return true;
}

double SpatialDomain::measure() const {
  double m = 1.0;
  for (int j = 0; j < dim; ++j) m *= hi[j] - lo[j];
  return m;
}

void SpatialDomain::validate() const {
  if (dim != 1 && dim != 2) fail_spec("domain dimension must be 1 or 2");
  for (int j = 0; j < dim; ++j)
    if (!(hi[j] > lo[j])) fail_spec("domain box is degenerate");
  if (dim == 1) {
    if (!split_line.empty()) fail_spec("split_line is a 2-D partition; use breakpoints in 1-D");
    double prev = lo[0];
    for (double b : breakpoints) {
      if (!(b > prev)) fail_spec("breakpoints must be strictly increasing");
      if (!(b > lo[0] && b < hi[0])) fail_spec("breakpoints must lie strictly inside the domain");
      prev = b;
    }
  } else {
    if (!breakpoints.empty()) fail_spec("breakpoints are a 1-D partition; use split_line in 2-D");
    if (!split_line.empty()) {
      if (split_line.size() < 2) fail_spec("split_line needs at least two points");
      const auto on_boundary = [&](const Vec& p) {
        const double tol = 1e-12 * (norm(hi - lo) + 1.0);
        return std::abs(p[0] - lo[0]) < tol || std::abs(p[0] - hi[0]) < tol ||
               std::abs(p[1] - lo[1]) < tol || std::abs(p[1] - hi[1]) < tol;
      };
      if (!on_boundary(split_line.front()) || !on_boundary(split_line.back()))
        fail_spec("split_line must start and end on the box boundary");
      for (size_t i = 0; i + 1 < split_line.size(); ++i) {
        if (dist(split_line[i], split_line[i + 1]) < 1e-14)
          fail_spec("split_line has a degenerate segment");
        for (size_t j = i + 2; j + 1 < split_line.size(); ++j)
          if (segments_properly_intersect(split_line[i], split_line[i + 1], split_line[j],
                                          split_line[j + 1]))
            fail_spec("split_line self-intersects");
      }
    }
  }
}

SpatialDomain make_interval(double lo, double hi, std::vector<double> breakpoints) {
  SpatialDomain d;
  d.dim = 1;
  d.lo = Vec{lo};
  d.hi = Vec{hi};
  d.breakpoints = std::move(breakpoints);
  d.validate();
  return d;
}

SpatialDomain make_box2(Vec lo, Vec hi, std::vector<Vec> split_line) {
  SpatialDomain d;
  d.dim = 2;
  d.lo = lo;
  d.hi = hi;
  d.split_line = std::move(split_line);
  d.validate();
  return d;
}

}  // namespace wellpath
