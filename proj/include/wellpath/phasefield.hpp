#pragma once
// Discrete phase-field energies on vertex-centered grids:
//
//   1-D:  E = sum_cells h [ (1/eps) W(x_mid, (u_i + u_{i+1})/2)
//                           + eps |(u_{i+1} - u_i)/h|^2 ]
//   2-D:  potential term at cell centers with the 4-corner state average;
//         Dirichlet term per grid edge with trapezoid weights (1/2 on
//         boundary rows/columns) so it matches the integral of |grad u|^2
//         for bilinear interpolants' axis differences.
//
// The gradient is the exact adjoint of these sums (entries of Dirichlet
// nodes are masked). Minimization is projected gradient descent with Armijo
// backtracking; the mean constraint is enforced by an affine shift on the
// free nodes after every accepted step, so the mass residual stays at
// round-off for every iterate.
//
// Eligible 1-D scalar problems (quartic / min-power q=2) route through the
// dispatch kernels; all paths produce the same numbers up to accumulation
// round-off.

#include <cstdint>
#include <string>
#include <vector>

#include "wellpath/field.hpp"
#include "wellpath/potential.hpp"

namespace wellpath {

struct EnergyBreakdown {
  double total = 0.0;
  double potential_part = 0.0;  // (1/eps) integral W
  double dirichlet_part = 0.0;  // eps integral |grad u|^2
};

EnergyBreakdown energy_eps(const Potential& pot, const Field& field, double eps);

// (1/eps) integral W only (the quantity the mass-bump trend is about).
double potential_cost(const Potential& pot, const Field& field, double eps);

// Exact adjoint gradient of energy_eps; entries at fixed nodes are zero.
std::vector<double> gradient_eps(const Potential& pot, const Field& field, double eps);

// Affine mean-shift projection on the free nodes: after the call,
// mean(field) == target_mean up to round-off, fixed nodes untouched.
void project_mean(Field& field, const Vec& target_mean);

// max_c |mean_c(field) - target_c|.
double mean_residual(const Field& field, const Vec& target_mean);

struct MinimizeOptions {
  int max_iters = 4000;
  double grad_tol = 1e-8;       // on max|gradient| relative to 1 + |E|
  double decrease_tol = 0.0;    // stop when an accepted step lowers the energy
                                // by less than this (relative to 1 + |E|); 0 = off
  double initial_step = 1.0;
  double armijo = 1e-4;
  double step_shrink = 0.5;
  double step_grow = 1.5;
  double min_step = 1e-14;
  bool mass_constrained = false;
  Vec mass_mean{};              // target mean per component
};

struct MinimizeReport {
  std::vector<double> energy_trace;    // accepted iterates, starting at E_0
  std::vector<double> residual_trace;  // mean residual per accepted iterate
  int iterations = 0;
  std::string termination;             // "converged" | "max_iterations" | "stalled"
  double final_energy = 0.0;
  double max_residual = 0.0;
};

MinimizeReport minimize(const Potential& pot, Field& field, double eps,
                        const MinimizeOptions& opts = {});

// Central-difference check of gradient_eps at random free entries; returns
// the largest relative error, with denominator max(|analytic|, |central|,
// floor) and probe step 1e-6 * (1 + max|u|).
double max_gradient_rel_error(const Potential& pot, const Field& field, double eps, int probes,
                              std::uint64_t seed);

// Tent-bump mass correction psi(x) = max(0, 1 - |x - center| / radius):
// adds c * psi with c chosen from the *discrete* integral of psi, so the
// mean constraint is restored exactly. Throws when the bump support misses
// every node.
void apply_tent_bump(Field& field, const Vec& target_mean, const Vec& center, double radius);

// Analytic tent coefficient: deficit * (N+1) / (omega_N r^N), the continuum
// value the discrete coefficient converges to (omega_1 = 2, omega_2 = pi).
double bump_coefficient(int space_dim, double radius, double deficit);

// Interface locations of a 1-D field: zero crossings of
// phi(x) = |u(x) - a_-(x)| - |u(x) - a_+(x)|, linearly interpolated between
// nodes. Empty when the field never switches nearest well.
std::vector<double> interface_crossings(const Potential& pot, const Field& field);

}  // namespace wellpath
