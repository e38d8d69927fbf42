#pragma once
// Sharp-interface limit energy on piecewise-well configurations, and the
// geodesic phase indicator ("z field") used as a compactness diagnostic.
//
// The limit energy charges each declared interface the degenerate geodesic
// distance between the well traces at that point (times interface length in
// 2-D). Interfaces sitting exactly on a well-coefficient handover use the
// adapted two-sided distance: inf over meeting states r of
// d_left(u^-, r) + d_right(r, u^+).
//
// The z field maps a state u at x to the reference-frame distance
// z = d_Wt(-e1, clamp(T(x)^{-1} u)) where Wt(v) = f(delta * min|v -+ e1|)
// capped at the table's own sup. It collapses any field into a scalar field
// whose variation counts interfaces; it is precomputed once per potential on
// a regular state-space table and interpolated.

#include <cstdint>
#include <vector>

#include "wellpath/field.hpp"
#include "wellpath/geodesic.hpp"
#include "wellpath/potential.hpp"

namespace wellpath {

// Piecewise-well configuration. 1-D: phases alternate starting from
// `left_sign` on the leftmost piece, switching at each jump position.
// 2-D: the interface is a simple polyline; `left_sign` is the phase on the
// left of its orientation.
struct SharpConfig {
  int left_sign = -1;
  std::vector<double> jumps;  // 1-D: strictly increasing, strictly interior
  Polyline interface;         // 2-D
};

struct SharpContribution {
  Vec where{};          // jump point (1-D) or segment midpoint (2-D)
  double length = 1.0;  // interface measure (1 for a point, segment length in 2-D)
  Vec minus{}, plus{};  // traces u^-, u^+
  double density = 0.0; // d_W(x; u^-, u^+)
  double value = 0.0;   // density * length
  double gap = 0.0;     // certification gap of the distance solve
  bool adapted = false; // two-sided handover construction used
  Vec meeting{};        // adapted connecting state r*
  int subdomain = 0;
};

struct SharpEnergyReport {
  double value = 0.0;  // sum of contributions
  double gap = 0.0;    // sum of per-contribution gaps
  std::vector<SharpContribution> parts;
};

SharpEnergyReport energy_infty(const Potential& pot, const SharpConfig& cfg,
                               const GeodesicOptions& opts = {});

// A copy of `pot` whose domain has no partition and whose wells follow the
// given subdomain's coefficient everywhere (identity for asymmetric wells).
Potential restrict_to_subdomain(const Potential& pot, int k);

// Nearest-well classification: -1 / +1 where the closer well is within tol,
// 0 otherwise (ties resolve to +1). The violation fraction is the
// trapezoid-weighted measure fraction of 0 nodes.
struct PhaseAssignment {
  Field indicator;  // scalar field on the same grid, values in {-1, 0, +1}
  double violation_fraction = 0.0;
};
PhaseAssignment assign_phases(const Potential& pot, const Field& field, double tol);

// Tabulated z(v) = d_Wt(-e1, v) on the clamp box [-L, L]^M, grid spacing
// 1 / per_unit (so +-e1 are exact nodes). M = 1 uses the cumulative scalar
// integral; M >= 2 a single-source shortest-path run with midpoint edge
// weights. Evaluation clamps the query into the box and the output into
// [0, z_max].
struct ZTable {
  int state_dim = 1;
  double box_half_width = 2.0;
  int per_unit = 16;
  int nodes_per_axis = 0;
  double delta = 0.0;   // state rescaling inside Wt
  double cap = 0.0;     // value cap (the sampled sup of Wt on the box)
  double z_max = 0.0;   // d_Wt(-e1, +e1)
  std::vector<double> values;

  double eval(const Vec& w) const;
};

ZTable build_z_table(const Potential& pot, int per_unit = 16);

// z field of u: node-wise table lookup of the frame-inverted state. Requires
// a symmetric well frame (the asymmetric landscape has none).
Field phase_indicator(const Potential& pot, const Field& field, const ZTable& table);
Field phase_indicator(const Potential& pot, const Field& field, int per_unit = 16);

// Discrete total variation of a scalar field: sum of |node differences|
// along grid edges (transverse trapezoid weights times cell width in 2-D, so
// it discretizes integral |grad z| dx in 2-D and pointwise variation in 1-D).
double total_variation(const Field& field);

}  // namespace wellpath
