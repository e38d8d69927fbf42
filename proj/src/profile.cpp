#include "wellpath/profile.hpp"

#include <algorithm>
#include <cmath>

#include "wellpath/errors.hpp"

namespace wellpath {

Vec ProfileResult::at_time(double t1) const {
  if (u.empty()) fail_param("profile table is empty");
  if (t1 <= 0.0) return u.front();
  if (t1 >= tau) return u.back();
  const auto it = std::lower_bound(t.begin(), t.end(), t1);
  std::size_t j = static_cast<std::size_t>(it - t.begin());
  if (j == 0) return u.front();
  const double dt = t[j] - t[j - 1];
  if (dt <= 0.0) return u[j];
  return lerp(u[j - 1], u[j], (t1 - t[j - 1]) / dt);
}

ProfileResult reparameterize(const Potential& pot, const Vec& x, const Polyline& curve,
                             const ProfileOptions& opts) {
  if (!(opts.eps > 0.0)) fail_param("profile eps must be positive");
  if (!(opts.lambda > 0.0)) fail_param("profile lambda must be positive");
  if (opts.table_size < 9) fail_param("profile table needs at least 9 samples");
  if (curve.pts.size() < 2) fail_param("profile curve needs at least 2 vertices");
  const double L = curve.length();
  if (!(L > 0.0)) fail_param("profile curve has zero length");

  const int K = opts.table_size;
  const double speed = 0.5 * L;  // |gamma'| under the arc-proportional parameter

  ProfileResult out;
  out.curve_length = L;
  out.s.resize(static_cast<std::size_t>(K));
  out.u.resize(static_cast<std::size_t>(K));
  out.t.resize(static_cast<std::size_t>(K));
  out.gprime.resize(static_cast<std::size_t>(K));

  std::vector<double> w(static_cast<std::size_t>(K));
  for (int j = 0; j < K; ++j) {
    const double s = -1.0 + 2.0 * j / (K - 1);
    out.s[static_cast<std::size_t>(j)] = s;
    const Vec pt = curve.point_at_arc(L * (s + 1.0) / 2.0);
    out.u[static_cast<std::size_t>(j)] = pt;
    const double wj = pot.eval(x, pt);
    w[static_cast<std::size_t>(j)] = wj;
    out.sup_w = std::max(out.sup_w, wj);
    out.gprime[static_cast<std::size_t>(j)] = std::sqrt(opts.lambda + wj) / (opts.eps * speed);
  }

  // Time table: trapezoid accumulation of eps |gamma'| / sqrt(lambda + W).
  // The same nodes drive the two sides of the cost comparison, so the
  // pointwise bound (2A^2 + B^2)/sqrt(A^2 + B^2) <= 2A + 2B (A = sqrt(W),
  // B = sqrt(lambda)) makes lhs <= rhs hold exactly, not just in the limit.
  const double ds = 2.0 / (K - 1);
  out.t[0] = 0.0;
  double lhs = 0.0, rhs = 0.0;
  auto lhs_at = [&](int j) {
    const double wj = w[static_cast<std::size_t>(j)];
    return (2.0 * wj + opts.lambda) / std::sqrt(opts.lambda + wj) * speed;
  };
  auto rhs_at = [&](int j) {
    const double wj = w[static_cast<std::size_t>(j)];
    return (2.0 * std::sqrt(wj) + 2.0 * std::sqrt(opts.lambda)) * speed;
  };
  auto dt_at = [&](int j) {
    return opts.eps * speed / std::sqrt(opts.lambda + w[static_cast<std::size_t>(j)]);
  };
  for (int j = 1; j < K; ++j) {
    out.t[static_cast<std::size_t>(j)] =
        out.t[static_cast<std::size_t>(j - 1)] + 0.5 * (dt_at(j - 1) + dt_at(j)) * ds;
    lhs += 0.5 * (lhs_at(j - 1) + lhs_at(j)) * ds;
    rhs += 0.5 * (rhs_at(j - 1) + rhs_at(j)) * ds;
  }
  out.tau = out.t.back();
  out.lhs_energy = lhs;
  out.rhs_bound = rhs;
  out.tau_lower = opts.eps * L / std::sqrt(opts.lambda + out.sup_w);
  out.tau_upper = opts.eps * L / std::sqrt(opts.lambda);
  return out;
}

double profile_energy(const Potential& pot, const Vec& x, const ProfileResult& profile,
                      double eps) {
  if (!(eps > 0.0)) fail_param("profile energy needs a positive eps");
  double total = 0.0;
  for (std::size_t j = 1; j < profile.t.size(); ++j) {
    const double dt = profile.t[j] - profile.t[j - 1];
    if (dt <= 0.0) continue;
    const Vec mid = lerp(profile.u[j - 1], profile.u[j], 0.5);
    const double du = dist(profile.u[j - 1], profile.u[j]) / dt;
    total += dt * (pot.eval(x, mid) / eps + eps * du * du);
  }
  return total;
}

}  // namespace wellpath
