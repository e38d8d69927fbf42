#pragma once
// Polylines in state space and weighted-length quadrature. The geodesic cost
// of a curve under a potential W at a frozen spatial point x is
//     E(curve) = integral of 2 sqrt(min(W(x, u), cap)) along the curve,
// evaluated per segment with a composite midpoint rule that doubles its
// subdivision until the Richardson estimate meets the tolerance.

#include <limits>
#include <vector>

#include "wellpath/potential.hpp"

namespace wellpath {

struct Polyline {
  std::vector<Vec> pts;

  double length() const;
  // Cumulative arc length per vertex (size pts.size(), starts at 0).
  std::vector<double> arc_table() const;
  // Point at arc-length parameter t in [0, length()].
  Vec point_at_arc(double t) const;
  // Sub-polyline between two arc-length parameters (endpoints interpolated).
  Polyline slice_by_arc(double t0, double t1) const;
  // Resampled copy with n vertices uniformly spaced in arc length.
  Polyline resample(int n) const;
};

struct QuadratureOptions {
  int min_subdiv = 4;
  int max_subdiv = 256;
  double rel_tol = 1e-7;
};

struct CurveCost {
  double value = 0.0;
  double error_estimate = 0.0;            // accumulated midpoint/trapezoid spread
  std::vector<double> per_segment;        // same order as the segments
};

constexpr double kNoCap = std::numeric_limits<double>::infinity();

// Weight 2 sqrt(min(W(x,u), cap)) at a single state.
double geodesic_weight(const Potential& pot, const Vec& x, const Vec& u, double cap = kNoCap);

// Weighted length of the polyline (the curve-energy functional).
CurveCost curve_cost(const Potential& pot, const Vec& x, const Polyline& curve,
                     double cap = kNoCap, const QuadratureOptions& opts = {});

// Fast fixed-subdivision variant for inner descent loops (no error estimate).
double curve_cost_fixed(const Potential& pot, const Vec& x, const Polyline& curve, double cap,
                        int subdiv);

// Closed-form scalar cost for 1-component potentials:
//     sigma(x; p, q) = | integral_p^q 2 sqrt(min(W(x,s), cap)) ds |
// via adaptive composite Simpson with a doubling error estimate.
struct ScalarSigma {
  double value = 0.0;
  double error_estimate = 0.0;
};
ScalarSigma scalar_sigma(const Potential& pot, const Vec& x, double p, double q,
                         double cap = kNoCap, double rel_tol = 1e-10);

// Arc in polar coordinates between two planar states: radius and angle both
// linear in the parameter (the angle along the shorter direction). Its length
// never exceeds |r_p - r_q| + 2 pi max(r_p, r_q).
struct PolarArc {
  Polyline curve;       // sampled
  double length = 0.0;  // quadrature of sqrt(r'^2 + r^2 psi'^2)
};
PolarArc polar_arc(const Vec& p, const Vec& q, int samples = 129);

}  // namespace wellpath
