#include "wellpath/phasefield.hpp"

#include <algorithm>
#include <cmath>

#include "wellpath/errors.hpp"
#include "wellpath/kernels.hpp"
#include "wellpath/rng.hpp"

namespace wellpath {

namespace {

void check_compat(const Potential& pot, const Field& field, double eps) {
  if (!(eps > 0.0)) fail_param("phase-field eps must be positive");
  if (field.state_dim != pot.state_dim)
    fail_param("field and potential state dimensions differ");
  if (field.space_dim != pot.space_dim)
    fail_param("field and potential space dimensions differ");
  const double tol = 1e-9;
  for (int d = 0; d < field.space_dim; ++d)
    if (field.lo[d] < pot.domain.lo[d] - tol || field.hi[d] > pot.domain.hi[d] + tol)
      fail_param("field box leaves the potential's spatial domain");
}

// Shared evaluation core. Eligible 1-D scalar families go through the
// dispatch kernels with per-cell well data precomputed once; everything else
// uses the generic loops. Both paths implement the same discrete sums.
struct Evaluator {
  const Potential& pot;
  double eps;
  enum class Path { generic, quartic1d, minpow1d } path = Path::generic;
  std::vector<double> cell_a;   // quartic: |a(x_mid)|^2, minpow: a(x_mid)
  std::vector<double> dvdm;     // per-cell scratch for the gradient

  Evaluator(const Potential& p, const Field& f, double e) : pot(p), eps(e) {
    if (f.space_dim == 1 && f.state_dim == 1 && p.space_dim == 1) {
      if (p.family == Family::quartic)
        path = Path::quartic1d;
      else if (p.family == Family::min_power && p.q == 2.0)
        path = Path::minpow1d;
    }
    if (path != Path::generic) {
      cell_a.resize(static_cast<std::size_t>(f.nx));
      dvdm.resize(static_cast<std::size_t>(f.nx));
      for (int i = 0; i < f.nx; ++i) {
        const Vec xm{f.lo[0] + f.hx() * (i + 0.5)};
        const double a = pot.well(xm, +1)[0];
        cell_a[static_cast<std::size_t>(i)] = path == Path::quartic1d ? a * a : std::abs(a);
      }
    }
  }

  EnergyBreakdown energy(const Field& f) const {
    EnergyBreakdown e;
    if (f.space_dim == 1) {
      const double h = f.hx();
      double wsum = 0.0, dsum = 0.0;
      if (path == Path::quartic1d) {
        wsum = kernels::quartic_cells(f.data.data(), cell_a.data(), f.nx, nullptr);
        dsum = kernels::diff_sq(f.data.data(), f.nx);
      } else if (path == Path::minpow1d) {
        wsum = kernels::minpow2_cells(f.data.data(), cell_a.data(), f.nx, nullptr);
        dsum = kernels::diff_sq(f.data.data(), f.nx);
      } else {
        for (int i = 0; i < f.nx; ++i) {
          const Vec xm{f.lo[0] + h * (i + 0.5)};
          const Vec mid = lerp(f.get(i), f.get(i + 1), 0.5);
          wsum += pot.eval(xm, mid);
          dsum += norm2(f.get(i + 1) - f.get(i));
        }
      }
      e.potential_part = h / eps * wsum;
      e.dirichlet_part = eps / h * dsum;
    } else {
      const double hx = f.hx(), hy = f.hy();
      double wsum = 0.0;
      for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
          const Vec xc{f.lo[0] + hx * (i + 0.5), f.lo[1] + hy * (j + 0.5)};
          const Vec avg = 0.25 * (f.get(i, j) + f.get(i + 1, j) + f.get(i, j + 1) +
                                  f.get(i + 1, j + 1));
          wsum += pot.eval(xc, avg);
        }
      e.potential_part = hx * hy / eps * wsum;
      double dsum = 0.0;
      // x-differences: transverse trapezoid weight across rows.
      for (int j = 0; j <= f.ny; ++j) {
        const double wj = (j == 0 || j == f.ny) ? 0.5 : 1.0;
        for (int i = 0; i < f.nx; ++i)
          dsum += wj * (hy / hx) * norm2(f.get(i + 1, j) - f.get(i, j));
      }
      for (int i = 0; i <= f.nx; ++i) {
        const double wi = (i == 0 || i == f.nx) ? 0.5 : 1.0;
        for (int j = 0; j < f.ny; ++j)
          dsum += wi * (hx / hy) * norm2(f.get(i, j + 1) - f.get(i, j));
      }
      e.dirichlet_part = eps * dsum;
    }
    e.total = e.potential_part + e.dirichlet_part;
    return e;
  }

  void gradient(const Field& f, std::vector<double>& g) {
    g.assign(f.data.size(), 0.0);
    if (f.space_dim == 1) {
      const double h = f.hx();
      const double wp = h / (2.0 * eps);
      if (path != Path::generic) {
        if (path == Path::quartic1d)
          kernels::quartic_cells(f.data.data(), cell_a.data(), f.nx, dvdm.data());
        else
          kernels::minpow2_cells(f.data.data(), cell_a.data(), f.nx, dvdm.data());
        for (int i = 0; i < f.nx; ++i) {
          const double d = wp * dvdm[static_cast<std::size_t>(i)];
          g[static_cast<std::size_t>(i)] += d;
          g[static_cast<std::size_t>(i + 1)] += d;
        }
        const double wd = 2.0 * eps / h;
        for (int i = 0; i < f.nx; ++i) {
          const double d = wd * (f.data[static_cast<std::size_t>(i + 1)] -
                                 f.data[static_cast<std::size_t>(i)]);
          g[static_cast<std::size_t>(i + 1)] += d;
          g[static_cast<std::size_t>(i)] -= d;
        }
      } else {
        const int M = f.state_dim;
        for (int i = 0; i < f.nx; ++i) {
          const Vec xm{f.lo[0] + h * (i + 0.5)};
          const Vec mid = lerp(f.get(i), f.get(i + 1), 0.5);
          const Vec dw = pot.du(xm, mid);
          const Vec diff = f.get(i + 1) - f.get(i);
          for (int c = 0; c < M; ++c) {
            const double dpot = wp * dw[c];
            const double ddir = 2.0 * eps / h * diff[c];
            g[static_cast<std::size_t>(i * M + c)] += dpot - ddir;
            g[static_cast<std::size_t>((i + 1) * M + c)] += dpot + ddir;
          }
        }
      }
    } else {
      const int M = f.state_dim;
      const double hx = f.hx(), hy = f.hy();
      const double wp = hx * hy / (4.0 * eps);
      for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
          const Vec xc{f.lo[0] + hx * (i + 0.5), f.lo[1] + hy * (j + 0.5)};
          const Vec avg = 0.25 * (f.get(i, j) + f.get(i + 1, j) + f.get(i, j + 1) +
                                  f.get(i + 1, j + 1));
          const Vec dw = pot.du(xc, avg);
          const int corners[4] = {f.node_index(i, j), f.node_index(i + 1, j),
                                  f.node_index(i, j + 1), f.node_index(i + 1, j + 1)};
          for (int c = 0; c < M; ++c) {
            const double d = wp * dw[c];
            for (int corner : corners) g[static_cast<std::size_t>(corner * M + c)] += d;
          }
        }
      for (int j = 0; j <= f.ny; ++j) {
        const double wj = ((j == 0 || j == f.ny) ? 0.5 : 1.0) * 2.0 * eps * hy / hx;
        for (int i = 0; i < f.nx; ++i) {
          const Vec diff = f.get(i + 1, j) - f.get(i, j);
          for (int c = 0; c < M; ++c) {
            g[static_cast<std::size_t>(f.node_index(i + 1, j) * M + c)] += wj * diff[c];
            g[static_cast<std::size_t>(f.node_index(i, j) * M + c)] -= wj * diff[c];
          }
        }
      }
      for (int i = 0; i <= f.nx; ++i) {
        const double wi = ((i == 0 || i == f.nx) ? 0.5 : 1.0) * 2.0 * eps * hx / hy;
        for (int j = 0; j < f.ny; ++j) {
          const Vec diff = f.get(i, j + 1) - f.get(i, j);
          for (int c = 0; c < M; ++c) {
            g[static_cast<std::size_t>(f.node_index(i, j + 1) * M + c)] += wi * diff[c];
            g[static_cast<std::size_t>(f.node_index(i, j) * M + c)] -= wi * diff[c];
          }
        }
      }
    }
    // Dirichlet mask.
    const int M = f.state_dim;
    for (int n = 0; n < f.node_count(); ++n)
      if (f.fixed[static_cast<std::size_t>(n)])
        for (int c = 0; c < M; ++c) g[static_cast<std::size_t>(n * M + c)] = 0.0;
  }
};

}  // namespace

EnergyBreakdown energy_eps(const Potential& pot, const Field& field, double eps) {
  check_compat(pot, field, eps);
  return Evaluator(pot, field, eps).energy(field);
}

double potential_cost(const Potential& pot, const Field& field, double eps) {
  check_compat(pot, field, eps);
  return Evaluator(pot, field, eps).energy(field).potential_part;
}

std::vector<double> gradient_eps(const Potential& pot, const Field& field, double eps) {
  check_compat(pot, field, eps);
  Evaluator ev(pot, field, eps);
  std::vector<double> g;
  ev.gradient(field, g);
  return g;
}

void project_mean(Field& field, const Vec& target_mean) {
  const double cell = field.space_dim == 2 ? field.hx() * field.hy() : field.hx();
  double denom = 0.0;
  for (int j = 0; j < field.nodes_y(); ++j)
    for (int i = 0; i < field.nodes_x(); ++i)
      if (!field.fixed[static_cast<std::size_t>(field.node_index(i, j))])
        denom += field.trap_weight(i, j) * cell;
  if (denom <= 0.0) fail_param("mean projection needs at least one free node");
  const Vec mass = field.mass();
  const double measure = field.measure();
  Vec shift;
  for (int c = 0; c < field.state_dim; ++c)
    shift[c] = (target_mean[c] * measure - mass[c]) / denom;
  for (int j = 0; j < field.nodes_y(); ++j)
    for (int i = 0; i < field.nodes_x(); ++i) {
      const int n = field.node_index(i, j);
      if (field.fixed[static_cast<std::size_t>(n)]) continue;
      for (int c = 0; c < field.state_dim; ++c)
        field.data[static_cast<std::size_t>(n * field.state_dim + c)] += shift[c];
    }
}

double mean_residual(const Field& field, const Vec& target_mean) {
  const Vec mean = field.mean();
  double r = 0.0;
  for (int c = 0; c < field.state_dim; ++c) r = std::max(r, std::abs(mean[c] - target_mean[c]));
  return r;
}

MinimizeReport minimize(const Potential& pot, Field& field, double eps,
                        const MinimizeOptions& opts) {
  check_compat(pot, field, eps);
  Evaluator ev(pot, field, eps);
  MinimizeReport rep;

  if (opts.mass_constrained) project_mean(field, opts.mass_mean);
  double energy = ev.energy(field).total;
  rep.energy_trace.push_back(energy);
  rep.residual_trace.push_back(opts.mass_constrained ? mean_residual(field, opts.mass_mean)
                                                     : 0.0);

  const double cell = field.space_dim == 2 ? field.hx() * field.hy() : field.hx();
  double free_weight = 0.0;
  for (int j = 0; j < field.nodes_y(); ++j)
    for (int i = 0; i < field.nodes_x(); ++i)
      if (!field.fixed[static_cast<std::size_t>(field.node_index(i, j))])
        free_weight += field.trap_weight(i, j) * cell;

  std::vector<double> g;
  Field trial = field;
  double step = opts.initial_step;
  rep.termination = "max_iterations";

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    ev.gradient(field, g);
    if (opts.mass_constrained) {
      // Remove the weighted mean of the gradient over the free nodes, so the
      // step direction itself preserves the mass integral.
      for (int c = 0; c < field.state_dim; ++c) {
        double lam = 0.0;
        for (int j = 0; j < field.nodes_y(); ++j)
          for (int i = 0; i < field.nodes_x(); ++i) {
            const int n = field.node_index(i, j);
            if (field.fixed[static_cast<std::size_t>(n)]) continue;
            lam += field.trap_weight(i, j) * cell *
                   g[static_cast<std::size_t>(n * field.state_dim + c)];
          }
        lam /= free_weight;
        for (int j = 0; j < field.nodes_y(); ++j)
          for (int i = 0; i < field.nodes_x(); ++i) {
            const int n = field.node_index(i, j);
            if (field.fixed[static_cast<std::size_t>(n)]) continue;
            g[static_cast<std::size_t>(n * field.state_dim + c)] -= lam;
          }
      }
    }

    double gmax = 0.0, g2 = 0.0;
    for (const double v : g) {
      gmax = std::max(gmax, std::abs(v));
      g2 += v * v;
    }
    if (gmax <= opts.grad_tol * (1.0 + std::abs(energy))) {
      rep.termination = "converged";
      break;
    }

    bool accepted = false;
    double trial_energy = energy;
    while (step >= opts.min_step) {
      for (std::size_t k = 0; k < field.data.size(); ++k)
        trial.data[k] = field.data[k] - step * g[k];
      if (opts.mass_constrained) project_mean(trial, opts.mass_mean);
      trial_energy = ev.energy(trial).total;
      if (trial_energy <= energy - opts.armijo * step * g2) {
        accepted = true;
        break;
      }
      step *= opts.step_shrink;
    }
    if (!accepted) {
      rep.termination = "stalled";
      break;
    }
    const double drop = energy - trial_energy;
    field.data.swap(trial.data);
    energy = trial_energy;
    step = std::min(step * opts.step_grow, 1e6);
    rep.iterations = iter + 1;
    rep.energy_trace.push_back(energy);
    rep.residual_trace.push_back(opts.mass_constrained ? mean_residual(field, opts.mass_mean)
                                                       : 0.0);
    if (opts.decrease_tol > 0.0 && drop <= opts.decrease_tol * (1.0 + std::abs(energy))) {
      rep.termination = "converged";
      break;
    }
  }

  rep.final_energy = energy;
  for (const double r : rep.residual_trace) rep.max_residual = std::max(rep.max_residual, r);
  return rep;
}

double max_gradient_rel_error(const Potential& pot, const Field& field, double eps, int probes,
                              std::uint64_t seed) {
  check_compat(pot, field, eps);
  std::vector<std::size_t> free_entries;
  for (int n = 0; n < field.node_count(); ++n)
    if (!field.fixed[static_cast<std::size_t>(n)])
      for (int c = 0; c < field.state_dim; ++c)
        free_entries.push_back(static_cast<std::size_t>(n * field.state_dim + c));
  if (free_entries.empty()) fail_param("gradient check needs free nodes");

  const std::vector<double> g = gradient_eps(pot, field, eps);
  double umax = 0.0;
  for (const double v : field.data) umax = std::max(umax, std::abs(v));
  const double t = 1e-6 * (1.0 + umax);

  Rng rng(seed);
  Field probe = field;
  double worst = 0.0;
  for (int k = 0; k < probes; ++k) {
    const std::size_t e =
        free_entries[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(free_entries.size()) - 1))];
    const double saved = probe.data[e];
    probe.data[e] = saved + t;
    const double ep = energy_eps(pot, probe, eps).total;
    probe.data[e] = saved - t;
    const double em = energy_eps(pot, probe, eps).total;
    probe.data[e] = saved;
    const double central = (ep - em) / (2.0 * t);
    const double denom = std::max({std::abs(g[e]), std::abs(central), 1e-8});
    worst = std::max(worst, std::abs(g[e] - central) / denom);
  }
  return worst;
}

void apply_tent_bump(Field& field, const Vec& target_mean, const Vec& center, double radius) {
  if (!(radius > 0.0)) fail_param("bump radius must be positive");
  for (int d = 0; d < field.space_dim; ++d)
    if (center[d] - radius < field.lo[d] - 1e-12 || center[d] + radius > field.hi[d] + 1e-12)
      fail_param("bump ball leaves the field box");
  const double cell = field.space_dim == 2 ? field.hx() * field.hy() : field.hx();
  std::vector<double> psi(static_cast<std::size_t>(field.node_count()), 0.0);
  double integral = 0.0;
  for (int j = 0; j < field.nodes_y(); ++j)
    for (int i = 0; i < field.nodes_x(); ++i) {
      const double r = dist(field.node_pos(i, j), center);
      const double v = std::max(0.0, 1.0 - r / radius);
      const int n = field.node_index(i, j);
      if (v > 0.0 && field.fixed[static_cast<std::size_t>(n)])
        fail_param("bump support touches fixed nodes");
      psi[static_cast<std::size_t>(n)] = v;
      integral += field.trap_weight(i, j) * cell * v;
    }
  if (integral <= 0.0) fail_param("bump support misses every grid node");

  const Vec mass = field.mass();
  const double measure = field.measure();
  for (int c = 0; c < field.state_dim; ++c) {
    const double coef = (target_mean[c] * measure - mass[c]) / integral;
    for (int n = 0; n < field.node_count(); ++n)
      field.data[static_cast<std::size_t>(n * field.state_dim + c)] +=
          coef * psi[static_cast<std::size_t>(n)];
  }
}

std::vector<double> interface_crossings(const Potential& pot, const Field& field) {
  if (field.space_dim != 1) fail_param("interface location is a 1-D diagnostic");
  if (field.state_dim != pot.state_dim)
    fail_param("field and potential state dimensions differ");
  std::vector<double> phi(static_cast<std::size_t>(field.node_count()));
  for (int i = 0; i < field.nodes_x(); ++i) {
    const Vec x = field.node_pos(i);
    const Vec u = field.get(i);
    phi[static_cast<std::size_t>(i)] = dist(u, pot.well(x, -1)) - dist(u, pot.well(x, +1));
  }
  std::vector<double> crossings;
  for (int i = 0; i + 1 < field.nodes_x(); ++i) {
    const double a = phi[static_cast<std::size_t>(i)];
    const double b = phi[static_cast<std::size_t>(i + 1)];
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      const double frac = std::abs(b - a) > 0.0 ? a / (a - b) : 0.5;
      crossings.push_back(field.lo[0] + field.hx() * (i + frac));
    }
  }
  return crossings;
}

double bump_coefficient(int space_dim, double radius, double deficit) {
  if (space_dim != 1 && space_dim != 2) fail_param("bump coefficient: space dimension 1 or 2");
  if (!(radius > 0.0)) fail_param("bump coefficient: radius must be positive");
  const double omega = space_dim == 1 ? 2.0 : kPi;
  return deficit * (space_dim + 1) / (omega * std::pow(radius, space_dim));
}

}  // namespace wellpath
