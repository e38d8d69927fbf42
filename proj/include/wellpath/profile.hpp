#pragma once
// Optimal transition profiles. Given a curve gamma between the wells at a
// frozen spatial point (treated as parameterized proportionally to arc length
// on [-1, 1], so |gamma'| = L/2), the profile runs through the same states at
// the pace
//
//     t(s) = integral_{-1}^{s} eps |gamma'| / sqrt(lambda + W(x, gamma)) d sigma,
//
// reaching the far well at time tau = t(1). The traversed phase-field energy
// (with the lambda relaxation) satisfies, node for node under the shared
// quadrature,
//
//     integral (2 W + lambda) |gamma'| / sqrt(lambda + W) ds
//         <= integral (2 sqrt(W) + 2 sqrt(lambda)) |gamma'| ds,
//
// i.e. the cost of the profile never exceeds the weighted curve cost plus
// 2 sqrt(lambda) L. tau itself is pinched between eps L / sqrt(lambda + sup W)
// and eps L / sqrt(lambda).

#include <vector>

#include "wellpath/curve.hpp"
#include "wellpath/potential.hpp"

namespace wellpath {

struct ProfileOptions {
  double eps = 0.01;
  double lambda = 1e-4;
  int table_size = 1025;  // sample count on [-1, 1] (>= 9)
};

struct ProfileResult {
  double tau = 0.0;             // total transition time
  std::vector<double> t;        // time table, t[0] = 0, t.back() = tau
  std::vector<double> s;        // matching curve parameters in [-1, 1]
  std::vector<Vec> u;           // states gamma(s) along the table
  std::vector<double> gprime;   // ds/dt = sqrt(lambda + W) / (eps |gamma'|)
  double lhs_energy = 0.0;      // profile transition cost (s-form integral)
  double rhs_bound = 0.0;       // weighted curve cost + 2 sqrt(lambda) L
  double tau_lower = 0.0;       // eps L / sqrt(lambda + sup W along the curve)
  double tau_upper = 0.0;       // eps L / sqrt(lambda)
  double curve_length = 0.0;
  double sup_w = 0.0;           // largest W sample along the curve

  // State at time t1, with constant extension outside [0, tau] (the profile
  // sits exactly on the wells there).
  Vec at_time(double t1) const;
};

ProfileResult reparameterize(const Potential& pot, const Vec& x, const Polyline& curve,
                             const ProfileOptions& opts);

// Phase-field transition cost of the tabulated profile on [0, tau]:
//     integral (1/eps) W(x, u(t)) + eps |u'(t)|^2 dt
// evaluated per table interval (midpoint states, forward differences).
double profile_energy(const Potential& pot, const Vec& x, const ProfileResult& profile,
                      double eps);

}  // namespace wellpath
