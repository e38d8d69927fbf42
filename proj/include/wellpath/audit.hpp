#pragma once
// Sampled audits of the structural assumptions a potential is supposed to
// satisfy, plus the growth-profile audit for the weight 2 sqrt(W) as a
// function of the distance to the wells. Audits never throw on a failed
// inequality: they report named checks with margins so callers (and the CLI
// audit verb) can surface exactly which assumption degenerates. The annular
// family is expected to fail the near-well growth floor — that degeneration
// is what produces its arbitrarily long geodesics.

#include <cstdint>
#include <string>
#include <vector>

#include "wellpath/potential.hpp"

namespace wellpath {

struct AuditCheck {
  std::string name;
  bool ok = true;
  bool applicable = true;  // false: check is structurally meaningless here
  double margin = 0.0;     // >= 0 when ok; most negative violation otherwise
  std::string detail;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  bool all_ok() const;
  const AuditCheck* find(const std::string& name) const;
};

// Structural checks, sampled over random (x, u) pairs:
//   finite_nonnegative  W >= 0 and finite everywhere sampled
//   wells_vanish        W(x, a_pm(x)) = 0 (to round-off)
//   wells_separated     sampled well separation >= declared delta
//   growth_envelope     W(x,u) <= C f(dist(u, wells)) with C = constants.envelope
//   growth_floor        W(x,u) >= f(dist)/C  (1-component symmetric families;
//                       not applicable when the zero set is a well circle)
//   coercivity          W(x,u) >= |u|/C for |u| >= C, sampled on the audit box
//   spatial_modulus     |W(x,T(x,w)) - W(y,T(y,w))| <= omega(|x-y|) min(...)
//   doubling            f(2t) <= C f(t) on a t-grid
AuditReport audit_hypotheses(const Potential& pot, int samples = 2048, std::uint64_t seed = 7);

// Growth-profile audit of the weight w(x,u) = 2 sqrt(W(x,u)) against the
// distance d = dist(u, wells):
//   g_upper           w <= sqrt(envelope) * 2 sqrt(f(d))  everywhere sampled
//   g_near_well       w >= c * d for d <= well_radius, with c at least
//                     kNearWellFraction of the mean slope out to the radius
//   g_coercive_floor  w bounded below by a positive floor for d >= well_radius
// ok = all three hold. The annular family fails g_near_well by design: its
// ring levels decay geometrically, so the near-well slope collapses relative
// to the landscape scale.
struct GrowthAudit {
  AuditReport report;
  bool ok = false;
};
GrowthAudit audit_growth(const Potential& pot, int samples = 2048, std::uint64_t seed = 7);

// Minimum acceptable ratio between the near-well weight slope and the
// reference slope (weight one well-radius away divided by the radius).
inline constexpr double kNearWellFraction = 0.05;
// Minimum acceptable far-region weight, as a fraction of the reference weight.
inline constexpr double kFloorFraction = 0.05;

// Weight envelope f0(t) = 2 sqrt(f(t)) used by the path-length bounds.
double weight_growth(const Potential& pot, double t);

}  // namespace wellpath
