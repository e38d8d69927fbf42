#include "wellpath/recovery.hpp"

#include <cmath>

#include "wellpath/errors.hpp"
#include "wellpath/phasefield.hpp"

namespace wellpath {

RecoveryResult build_recovery_field(const Potential& pot, double x0,
                                    const RecoveryOptions& opts) {
  if (pot.space_dim != 1 && pot.space_dim != 2)
    fail_param("recovery fields need a 1-D or 2-D spatial domain");
  if (!(opts.eps > 0.0)) fail_param("recovery eps must be positive");
  if (!(opts.lbar > 0.0)) fail_param("recovery lbar must be positive");
  if (opts.cells < 16) fail_param("recovery grid needs at least 16 cells");

  const double xlo = pot.domain.lo[0], xhi = pot.domain.hi[0];
  if (!(x0 > xlo && x0 < xhi)) fail_param("interface position outside the domain");

  // Anchor point where the profile is computed; in 2-D the tube midpoint.
  Vec anchor{x0};
  if (pot.space_dim == 2) anchor = Vec{x0, 0.5 * (pot.domain.lo[1] + pot.domain.hi[1])};

  const Vec wm = pot.well(anchor, -1);
  const Vec wp = pot.well(anchor, +1);

  Polyline curve = opts.curve;
  if (curve.pts.size() < 2) {
    if (opts.curve_vertices < 2) fail_param("recovery curve needs at least 2 vertices");
    curve.pts = {wm, wp};
    curve = curve.resample(opts.curve_vertices);
  } else {
    const double scale = 1.0 + dist(wm, wp);
    if (dist(curve.pts.front(), wm) > 1e-6 * scale || dist(curve.pts.back(), wp) > 1e-6 * scale)
      fail_param("recovery curve must run from the minus well to the plus well");
  }

  ProfileOptions popts;
  popts.eps = opts.eps;
  popts.lambda = opts.lambda > 0.0 ? opts.lambda : opts.eps * opts.eps;
  popts.table_size = opts.profile_table;

  RecoveryResult res;
  res.x0 = x0;
  res.profile = reparameterize(pot, anchor, curve, popts);
  {
    const CurveCost cc = curve_cost(pot, anchor, curve);
    res.interface_cost = cc.value;
  }

  // Center the tube on the profile's crossing of the mid-plane between the
  // wells (first sign change of the first frame coordinate).
  const ProfileResult& prof = res.profile;
  double t_c = -1.0;
  double prev_w = pot.frame_invert(anchor, prof.u.front())[0];
  for (std::size_t k = 1; k < prof.u.size(); ++k) {
    const double cur_w = pot.frame_invert(anchor, prof.u[k])[0];
    if ((prev_w < 0.0 && cur_w >= 0.0) || (prev_w > 0.0 && cur_w <= 0.0)) {
      const double denom = cur_w - prev_w;
      const double frac = std::abs(denom) > 0.0 ? -prev_w / denom : 0.5;
      t_c = prof.t[k - 1] + frac * (prof.t[k] - prof.t[k - 1]);
      break;
    }
    prev_w = cur_w;
  }
  if (t_c < 0.0) fail_numeric("recovery profile never crosses the mid-plane");

  const double l = opts.lbar * opts.eps;
  if (std::max(t_c, prof.tau - t_c) > l)
    fail_param("transition tube too short for the profile (increase lbar)");
  if (x0 - l <= xlo || x0 + l >= xhi)
    fail_param("transition tube leaves the domain (move the interface or shrink lbar/eps)");

  if (pot.space_dim == 1) {
    res.field = Field::make_1d(xlo, xhi, opts.cells, pot.state_dim);
  } else {
    const int cy = opts.cells_y > 0 ? opts.cells_y : opts.cells;
    res.field = Field::make_2d(pot.domain.lo, pot.domain.hi, opts.cells, cy, pot.state_dim);
  }
  Field& f = res.field;

  for (int j = 0; j < f.nodes_y(); ++j)
    for (int i = 0; i < f.nodes_x(); ++i) {
      const Vec pos = f.node_pos(i, j);
      const double s = pos[0] - x0;
      Vec u;
      if (s <= -l) {
        u = pot.well(pos, -1);
      } else if (s >= l) {
        u = pot.well(pos, +1);
      } else {
        const Vec w = pot.frame_invert(anchor, prof.at_time(t_c + s));
        u = pot.frame_apply(pos, w);
      }
      f.set(i, j, u);
    }

  if (opts.freeze_boundary) {
    if (f.space_dim == 1) {
      f.fixed[0] = 1;
      f.fixed[static_cast<std::size_t>(f.nx)] = 1;
    } else {
      for (int j = 0; j < f.nodes_y(); ++j)
        for (int i = 0; i < f.nodes_x(); ++i)
          if (i == 0 || i == f.nx || j == 0 || j == f.ny)
            f.fixed[static_cast<std::size_t>(f.node_index(i, j))] = 1;
    }
  }

  res.energy = energy_eps(pot, f, opts.eps).total;
  return res;
}

}  // namespace wellpath
