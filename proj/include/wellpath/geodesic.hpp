#pragma once
// Degenerate geodesic distance between two states at a frozen spatial point:
//
//   d(x; p, q) = inf over curves gamma from p to q of
//                integral 2 sqrt(min(W(x, gamma), cap)) |gamma'|
//
// Pipeline for state dimension >= 2:
//   1. Dijkstra on a regular grid over a search box (8-neighborhood in the
//      plane, 6-neighborhood in 3-D) with midpoint edge weights — gives the
//      initial polyline and an upper value.
//   2. Per-vertex per-axis golden-section descent on the two adjacent
//      segments, with arc-length respacing between sweeps (skipped whenever
//      it would raise the energy, so sweep energies never increase).
//   3. Certification: the reported distance is the adaptive quadrature value
//      of the final polyline; the lower bound is the better of a refined-grid
//      Dijkstra run on pessimistic edge weights (minimum weight sample
//      divided by the neighborhood chord factor) and a family of directional
//      slab bounds. gap = distance - lower bound.
//
// One-component potentials bypass all of this: the distance is the exact
// scalar integral, with the quadrature error as the gap.
//
// All distances are relative to the search box: curves are not allowed to
// leave it. The default box contains p, q, and both wells with generous
// padding, so at desk scale this matches the unconstrained distance.

#include <cstdint>

#include "wellpath/audit.hpp"
#include "wellpath/curve.hpp"
#include "wellpath/potential.hpp"

namespace wellpath {

struct GeodesicOptions {
  double cap = kNoCap;     // weight truncation level (min(W, cap) inside the sqrt)
  int grid_n = 97;         // Dijkstra nodes per axis
  int lb_grid_n = -1;      // lower-bound grid nodes per axis (-1: 2*grid_n - 1)
  int vertices = 129;      // descent polyline vertices
  int max_sweeps = 48;
  double sweep_tol = 1e-9;    // relative improvement threshold (two quiet sweeps stop)
  int descent_subdiv = 8;     // fixed midpoint subdivisions inside the descent
  double box_pad = -1.0;      // padding around the automatic box (-1: auto)
  bool box_set = false;       // when true, use box_lo/box_hi as the search box
  Vec box_lo{}, box_hi{};
  double eps_cert = 1e-2;     // certification target for the gap
  bool compute_lower_bound = true;
  bool run_growth_audit = true;
  int growth_audit_samples = 512;
};

struct GeodesicResult {
  double distance = 0.0;      // adaptive quadrature value of the final polyline
  double lower_bound = 0.0;
  double gap = 0.0;           // max(0, distance - lower_bound)
  bool certified = false;     // gap <= eps_cert
  double euclid_length = 0.0; // plain arc length of the minimizing polyline
  Polyline path;
  int sweeps = 0;
  double dijkstra_value = 0.0;
  double lb_dijkstra = 0.0;
  double lb_slab = 0.0;
  bool growth_audit_ok = true;  // false: the growth floor degenerates (flag, not error)
  bool oracle = false;          // closed-form 1-component integral used
  double quadrature_error = 0.0;
  Vec box_lo{}, box_hi{};
};

GeodesicResult geodesic_distance(const Potential& pot, const Vec& x, const Vec& p, const Vec& q,
                                 const GeodesicOptions& opts = {});

// A-priori truncation level: a radius no minimizing curve can leave (derived
// from the growth envelope and a straight-line cost budget), the sampled sup
// of W on that ball, and the cap 4 * sup. Truncating at or above `sup_w`
// leaves the distance unchanged; `cap` keeps a factor-4 margin.
struct TruncationCap {
  double a_priori_radius = 0.0;
  double sup_w = 0.0;
  double cap = 0.0;
};
TruncationCap derive_truncation_cap(const Potential& pot, const Vec& x, const Vec& p,
                                    const Vec& q);

// Distance adapted to a potential handover (a jump sitting on a subdomain
// boundary): inf over meeting states r of d_left(p, r) + d_right(r, q).
// The candidate set always contains r = p and r = q, so the value never
// exceeds either single-sided distance.
struct AdaptedResult {
  double value = 0.0;
  Vec meeting_point{};
  double left_value = 0.0;
  double right_value = 0.0;
  double gap = 0.0;  // sum of the two certification gaps at the minimizer
};
AdaptedResult adapted_distance(const Potential& left, const Potential& right, const Vec& x,
                               const Vec& p, const Vec& q, const GeodesicOptions& opts = {});

// Checks the sub-path property of a computed minimizer: on random arc-length
// sub-intervals, the curve's own cost must not exceed the geodesic distance
// between the sub-interval endpoints by more than eps_slack (plus round-off).
// Sub-distances are solved with reduced-budget options derived from `base`.
struct LocalityReport {
  int checks = 0;
  int violations = 0;
  double worst_excess = 0.0;  // most positive (E_sub - d_sub - eps_slack)
};
LocalityReport verify_locality(const Potential& pot, const Vec& x, const GeodesicResult& res,
                               double eps_slack, int n_checks, std::uint64_t seed,
                               const GeodesicOptions& base = {});

}  // namespace wellpath
