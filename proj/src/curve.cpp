#include "wellpath/curve.hpp"

#include <algorithm>
#include <cmath>

#include "wellpath/errors.hpp"

namespace wellpath {

double Polyline::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) total += dist(pts[i - 1], pts[i]);
  return total;
}

std::vector<double> Polyline::arc_table() const {
  std::vector<double> table(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i)
    table[i] = table[i - 1] + dist(pts[i - 1], pts[i]);
  return table;
}

Vec Polyline::point_at_arc(double t) const {
  if (pts.empty()) fail_param("point_at_arc on empty polyline");
  if (pts.size() == 1) return pts[0];
  const std::vector<double> table = arc_table();
  const double total = table.back();
  t = std::clamp(t, 0.0, total);
  // First vertex with cumulative length >= t.
  auto it = std::lower_bound(table.begin(), table.end(), t);
  std::size_t j = static_cast<std::size_t>(it - table.begin());
  if (j == 0) return pts[0];
  const double seg = table[j] - table[j - 1];
  if (seg <= 0.0) return pts[j];
  return lerp(pts[j - 1], pts[j], (t - table[j - 1]) / seg);
}

Polyline Polyline::slice_by_arc(double t0, double t1) const {
  if (t1 < t0) std::swap(t0, t1);
  const std::vector<double> table = arc_table();
  const double total = table.empty() ? 0.0 : table.back();
  t0 = std::clamp(t0, 0.0, total);
  t1 = std::clamp(t1, 0.0, total);
  Polyline out;
  out.pts.push_back(point_at_arc(t0));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (table[i] > t0 && table[i] < t1) out.pts.push_back(pts[i]);
  }
  out.pts.push_back(point_at_arc(t1));
  return out;
}

Polyline Polyline::resample(int n) const {
  if (n < 2) fail_param("resample needs at least 2 vertices");
  if (pts.size() < 2) fail_param("resample on degenerate polyline");
  const double total = length();
  Polyline out;
  out.pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = total * static_cast<double>(i) / static_cast<double>(n - 1);
    out.pts.push_back(point_at_arc(t));
  }
  // Keep the original endpoints bit-exact.
  out.pts.front() = pts.front();
  out.pts.back() = pts.back();
  return out;
}

double geodesic_weight(const Potential& pot, const Vec& x, const Vec& u, double cap) {
  const double w = pot.eval(x, u);
  return 2.0 * std::sqrt(std::min(w, cap));
}

namespace {

// Composite midpoint rule for the weight along one segment, n sub-intervals.
double segment_midpoint(const Potential& pot, const Vec& x, const Vec& a, const Vec& b,
                        double cap, int n) {
  const double len = dist(a, b);
  if (len == 0.0) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    sum += geodesic_weight(pot, x, lerp(a, b, s), cap);
  }
  return sum * len / static_cast<double>(n);
}

// Composite trapezoid rule on the same sub-intervals.
double segment_trapezoid(const Potential& pot, const Vec& x, const Vec& a, const Vec& b,
                         double cap, int n) {
  const double len = dist(a, b);
  if (len == 0.0) return 0.0;
  double sum = 0.5 * (geodesic_weight(pot, x, a, cap) + geodesic_weight(pot, x, b, cap));
  for (int i = 1; i < n; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n);
    sum += geodesic_weight(pot, x, lerp(a, b, s), cap);
  }
  return sum * len / static_cast<double>(n);
}

}  // namespace

CurveCost curve_cost(const Potential& pot, const Vec& x, const Polyline& curve, double cap,
                     const QuadratureOptions& opts) {
  CurveCost out;
  if (curve.pts.size() < 2) return out;
  out.per_segment.reserve(curve.pts.size() - 1);
  for (std::size_t i = 1; i < curve.pts.size(); ++i) {
    const Vec& a = curve.pts[i - 1];
    const Vec& b = curve.pts[i];
    // Convergence is judged by midpoint against trapezoid on the same cells,
    // never midpoint against its own refinement: for weights built from |.|
    // of a quadratic, the per-cell midpoint errors are +-c h^2 and a segment
    // with as many sample cells inside the wells as outside cancels them
    // exactly, so successive midpoint doublings can agree to the last bit
    // while sitting far from the integral.  The trapezoid nodes do not share
    // that cancellation, and (2 mid + trap) / 3 is the Simpson value.
    int n = opts.min_subdiv;
    double trap = segment_trapezoid(pot, x, a, b, cap, n);
    double mid = segment_midpoint(pot, x, a, b, cap, n);
    double value = (2.0 * mid + trap) / 3.0;
    double err = std::abs(mid - trap) / 3.0;
    int quiet = (err <= opts.rel_tol * (1.0 + std::abs(value))) ? 1 : 0;
    while (n < opts.max_subdiv && quiet < 2) {
      trap = 0.5 * (trap + mid);  // trapezoid on the doubled cells
      n *= 2;
      mid = segment_midpoint(pot, x, a, b, cap, n);
      value = (2.0 * mid + trap) / 3.0;
      err = std::abs(mid - trap) / 3.0;
      quiet = (err <= opts.rel_tol * (1.0 + std::abs(value))) ? quiet + 1 : 0;
    }
    out.per_segment.push_back(value);
    out.value += value;
    out.error_estimate += err;
  }
  return out;
}

double curve_cost_fixed(const Potential& pot, const Vec& x, const Polyline& curve, double cap,
                        int subdiv) {
  double total = 0.0;
  for (std::size_t i = 1; i < curve.pts.size(); ++i)
    total += segment_midpoint(pot, x, curve.pts[i - 1], curve.pts[i], cap, subdiv);
  return total;
}

namespace {

struct SimpsonCtx {
  const Potential* pot;
  const Vec* x;
  double cap;
};

double sigma_integrand(const SimpsonCtx& ctx, double s) {
  Vec u;
  u.c[0] = s;
  return geodesic_weight(*ctx.pot, *ctx.x, u, ctx.cap);
}

// Composite Simpson with n sub-intervals (n even).
double simpson(const SimpsonCtx& ctx, double a, double b, int n) {
  const double h = (b - a) / static_cast<double>(n);
  double sum = sigma_integrand(ctx, a) + sigma_integrand(ctx, b);
  for (int i = 1; i < n; ++i) {
    const double w = (i % 2 == 1) ? 4.0 : 2.0;
    sum += w * sigma_integrand(ctx, a + h * static_cast<double>(i));
  }
  return sum * h / 3.0;
}

}  // namespace

ScalarSigma scalar_sigma(const Potential& pot, const Vec& x, double p, double q, double cap,
                         double rel_tol) {
  if (pot.state_dim != 1) fail_param("scalar_sigma requires a 1-component potential");
  ScalarSigma out;
  if (p == q) return out;
  const double a = std::min(p, q);
  const double b = std::max(p, q);
  SimpsonCtx ctx{&pot, &x, cap};
  int n = 64;
  double coarse = simpson(ctx, a, b, n);
  int quiet = 0;
  for (int pass = 0; pass < 12; ++pass) {
    n *= 2;
    const double fine = simpson(ctx, a, b, n);
    // Richardson: Simpson halving error ~ |fine - coarse| / 15.
    out.error_estimate = std::abs(fine - coarse) / 15.0;
    out.value = fine;
    coarse = fine;
    // Same guard as the midpoint loop: insist on two quiet halvings so a
    // lone coincidence cannot stop the refinement early.
    if (out.error_estimate <= rel_tol * (1.0 + std::abs(fine))) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  return out;
}

PolarArc polar_arc(const Vec& p, const Vec& q, int samples) {
  if (samples < 2) fail_param("polar_arc needs at least 2 samples");
  const double rp = std::hypot(p.c[0], p.c[1]);
  const double rq = std::hypot(q.c[0], q.c[1]);
  const double psi_p = (rp > 0.0) ? std::atan2(p.c[1], p.c[0]) : ((rq > 0.0) ? std::atan2(q.c[1], q.c[0]) : 0.0);
  const double psi_q = (rq > 0.0) ? std::atan2(q.c[1], q.c[0]) : psi_p;
  const double dpsi = wrap_angle(psi_q - psi_p);

  PolarArc out;
  out.curve.pts.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    const double r = rp + (rq - rp) * t;
    const double psi = psi_p + dpsi * t;
    Vec v;
    v.c[0] = r * std::cos(psi);
    v.c[1] = r * std::sin(psi);
    out.curve.pts.push_back(v);
  }
  out.curve.pts.front() = p;
  out.curve.pts.back() = q;

  // Exact speed sqrt(r'(t)^2 + r(t)^2 psi'(t)^2) integrated by Simpson.
  const int n = 512;
  const double dr = rq - rp;
  auto speed = [&](double t) {
    const double r = rp + dr * t;
    return std::sqrt(dr * dr + r * r * dpsi * dpsi);
  };
  double sum = speed(0.0) + speed(1.0);
  for (int i = 1; i < n; ++i)
    sum += ((i % 2 == 1) ? 4.0 : 2.0) * speed(static_cast<double>(i) / n);
  out.length = sum / (3.0 * n);
  return out;
}

}  // namespace wellpath
