#pragma once
// Space-dependent two-well potentials W(x, u) >= 0 on a spatial domain, with
// W(x, u) = 0 exactly at the two wells. Families:
//
//   quartic    W(x,u) = (|u|^2 - |a(x)|^2)^2        wells +-a(x)
//   min_power  W(x,u) = min(|u-a(x)|, |u+a(x)|)^q   wells +-a(x), q >= 1
//   annular    fixed obstacle landscape in the 2-D state plane with wells at
//              (0,-1) and the origin; built by make_annular_potential.
//
// Symmetric families carry the frame map T(x, w) that sends the reference
// wells +-e1 to +-a(x): in 1-D T(x,w) = a(x)*w, in 2-D T(x,w) = w1*a + w2*a_perp,
// in 3-D the frame is completed by a deterministic Gram-Schmidt step. The
// annular family has no symmetric frame; frame operations reject it.

#include <functional>
#include <string>
#include <vector>

#include "wellpath/domain.hpp"
#include "wellpath/geometry.hpp"

namespace wellpath {

// ---------------------------------------------------------------------------
// Growth envelope f: continuous, nondecreasing, f(t) = 0 iff t = 0. Used by
// the two-sided envelope audit (W comparable to f(distance to nearest well)),
// the doubling audit, the a-priori minimizer bounds, and the compactness
// indicator field.
// ---------------------------------------------------------------------------
struct GrowthFunction {
  enum class Kind {
    power,             // f(t) = t^alpha
    quartic_envelope,  // f(t) = t^2 (t + 2)^2  (matches the quartic family)
  };
  Kind kind = Kind::power;
  double alpha = 2.0;      // exponent for Kind::power
  double well_radius = 1.0;  // radius R of the near-well regime (two-sided bound)
  double floor_level = 1.0;  // lower bound of f beyond well_radius (coercive floor)

  double eval(double t) const;
  // Analytic constant C with f(2t) <= C f(t) for all t > 0.
  double doubling_bound() const;
  // F(t) = int_0^t f, and its minimal left inverse G(y) = inf{t : F(t) >= y}.
  double antiderivative(double t) const;
  double left_inverse_of_antiderivative(double y) const;
};

// ---------------------------------------------------------------------------
// Well field a(x): the location of the "+" well on one subdomain. Kinds:
//   constant   a(x) = value
//   affine     a(x) = value + grad * (x - origin)   (componentwise gradients)
//   poly1d     a(x) = direction * sum_k coeff[k] * s^k, s = axis . (x - origin)
// ---------------------------------------------------------------------------
struct WellField {
  enum class Kind { constant, affine, poly1d };
  Kind kind = Kind::constant;
  Vec value{1.0};                   // constant part / direction scale
  Vec origin{0.0};                  // spatial origin for affine/poly1d
  std::array<Vec, 2> grad{};        // affine: grad[j] = d a / d x_j
  Vec axis{1.0};                    // poly1d: unit spatial axis
  Vec direction{1.0};               // poly1d: state-space direction
  std::vector<double> coeffs;       // poly1d coefficients, low order first

  Vec eval(const Vec& x) const;
  // Largest |d a / d x| over the domain (exact for constant/affine, sampled
  // with a safety factor for poly1d). Used to build the spatial modulus.
  double gradient_bound(const SpatialDomain& domain) const;
};

// ---------------------------------------------------------------------------
// Annular obstacle landscape (2-D state plane). Ring k = 1..rings occupies
// radii (1/(k+1), 1/k). Each ring carries a cheap web (its bounding circles
// and two radial slits) and two expensive barrier bands with angular gaps that
// alternate bottom/top, so any cheap path must wind half-way around every
// ring. Between the named sets the landscape interpolates piecewise linearly.
// ---------------------------------------------------------------------------
struct AnnularSpec {
  int rings = 1;
  double barrier = 50.0;             // obstacle height on ring 1; ring k uses barrier/k
  std::vector<double> eps;           // web levels, size rings+1, strictly decreasing
  double gap_half_width = 0.15;      // angular half-width of the barrier gaps (radians)
  double outer_well_radius = 0.05;   // modulation radius at the outer well (0,-1)
  double inner_well_frac = 0.4;      // inner modulation radius as a fraction of the
                                     // innermost ring radius 1/(rings+1)
};

// ---------------------------------------------------------------------------
// Potential
// ---------------------------------------------------------------------------
enum class Family { quartic, min_power, annular };

struct HypothesisConstants {
  double delta = 0.0;        // lower bound for the well separation |a_+ - a_-|
  double envelope = 0.0;     // C with f(d)/C <= W <= C f(d), d = distance to wells
  double coercivity = 0.0;   // C with W(x,u) >= |u|/C for |u| >= C
  double doubling = 0.0;     // C with f(2t) <= C f(t)
  double modulus_slope = 0.0;  // omega(r) = modulus_slope * r (spatial modulus)
};

struct Potential {
  int space_dim = 1;  // N
  int state_dim = 1;  // M
  Family family = Family::quartic;
  double q = 2.0;     // min_power exponent
  SpatialDomain domain;

  // Per-subdomain "+" wells for symmetric families (minus well = -plus well).
  std::vector<WellField> plus_wells;
  // Asymmetric well pair (annular family).
  bool symmetric_wells = true;
  Vec fixed_plus_well{};
  Vec fixed_minus_well{};

  GrowthFunction growth;
  HypothesisConstants constants;
  AnnularSpec annular;

  // --- evaluation ---------------------------------------------------------
  double eval(const Vec& x, const Vec& u) const;          // W(x, u)
  Vec du(const Vec& x, const Vec& u) const;               // dW/du (state gradient)
  Vec well(const Vec& x, int sign) const;                 // sign=+1 / -1
  double well_separation(const Vec& x) const;             // |a_+(x) - a_-(x)|

  // Spatial modulus omega(r) used by the spatial-consistency audit.
  double omega(double r) const { return constants.modulus_slope * r; }

  // --- symmetric frame ----------------------------------------------------
  bool has_frame() const { return symmetric_wells; }
  Vec frame_apply(const Vec& x, const Vec& w) const;    // T(x, w), T(x, e1) = +a(x)
  Vec frame_invert(const Vec& x, const Vec& u) const;   // T(x, .)^{-1}
  // W(x, T(x, w)): the potential pulled back to the reference wells +-e1.
  double eval_adjusted(const Vec& x, const Vec& w) const;

  // Sampled sup of W over the centered state-space box [-r, r]^M at x.
  double sup_on_box(const Vec& x, double r, int samples_per_axis = 33) const;

  void validate() const;  // throws invalid_spec on structural problems
};

// --- family builders -------------------------------------------------------

// W(x,u) = (|u|^2 - |a(x)|^2)^2 with wells +-a(x).
Potential make_quartic_potential(SpatialDomain domain, std::vector<WellField> plus_wells,
                                 int state_dim = 1);

// W(x,u) = min(|u - a(x)|, |u + a(x)|)^q with wells +-a(x), q >= 1.
Potential make_min_power_potential(SpatialDomain domain, std::vector<WellField> plus_wells,
                                   int state_dim, double q);

// The annular obstacle landscape described above; state_dim = 2, constant in x.
// When spec.eps is empty, levels default to eps[k] = 0.01 * 0.25^k, a decay
// fast enough to break the near-well two-sided growth bound at the inner well
// (which is what makes the winding geodesics arbitrarily long).
Potential make_annular_potential(AnnularSpec spec);

// Internal helper exposed for tests: the annular landscape value before well
// modulation (the raw web/barrier interpolation).
double annular_base_value(const AnnularSpec& spec, const Vec& u);

}  // namespace wellpath
