#pragma once
// Recovery fields: near-optimal phase-field competitors built from an optimal
// transition profile. The field equals the local minus-well left of the
// interface, the plus-well right of it, and runs through the (spatially
// re-framed) profile states across a tube of half-width lbar * eps around the
// interface. In 2-D the interface is the vertical line x = x0 and the profile
// is the one computed at the tube's midpoint.

#include "wellpath/curve.hpp"
#include "wellpath/field.hpp"
#include "wellpath/potential.hpp"
#include "wellpath/profile.hpp"

namespace wellpath {

struct RecoveryOptions {
  double eps = 0.01;
  double lbar = 8.0;        // transition tube half-width, in units of eps
  int cells = 1024;         // grid cells along x
  int cells_y = -1;         // 2-D cells along y (< 0: same as cells)
  double lambda = -1.0;     // profile relaxation (< 0: eps^2)
  int profile_table = 2049;
  int curve_vertices = 65;  // used when no connecting curve is supplied
  Polyline curve;           // optional well-to-well curve at the interface point
  bool freeze_boundary = true;
};

struct RecoveryResult {
  Field field;
  ProfileResult profile;
  double x0 = 0.0;              // interface position
  double interface_cost = 0.0;  // weighted curve cost at the interface point
  double energy = 0.0;          // phase-field energy of the built field
};

RecoveryResult build_recovery_field(const Potential& pot, double x0,
                                    const RecoveryOptions& opts);

}  // namespace wellpath
