#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wellpath/profile.hpp"
#include "wellpath/rng.hpp"

using namespace wellpath;
using testutil::thrown_code;

namespace {

// Circle arc of radius r about the state origin, arc length `len`, sampled
// densely; on it the quartic landscape (|u|^2 - 1)^2 is constant.
Polyline circle_arc(double r, double theta0, double len, int vertices) {
  Polyline pl;
  const double dtheta = len / r;
  for (int i = 0; i < vertices; ++i) {
    const double th = theta0 + dtheta * i / (vertices - 1);
    pl.pts.push_back(Vec{r * std::cos(th), r * std::sin(th)});
  }
  return pl;
}

Polyline straight(const Vec& a, const Vec& b, int vertices) {
  Polyline pl;
  for (int i = 0; i < vertices; ++i)
    pl.pts.push_back(lerp(a, b, static_cast<double>(i) / (vertices - 1)));
  return pl;
}

}  // namespace

TEST_SUITE("profile") {

TEST_CASE("constant landscape along a circle arc") {
  // On the arc of radius sqrt(1 + sqrt(3)) the quartic potential is
  // identically 3; with unit pace, arc length 2, eps = lambda = 1 the
  // reparameterization is fully explicit.
  WellField w;
  w.kind = WellField::Kind::constant;
  w.value = Vec{1.0, 0.0};
  Potential pot = make_quartic_potential(make_interval(0.0, 1.0), {w}, 2);

  const double r0 = std::sqrt(1.0 + std::sqrt(3.0));
  Polyline arc = circle_arc(r0, 0.3, 2.0, 1025);

  ProfileOptions opts;
  opts.eps = 1.0;
  opts.lambda = 1.0;
  ProfileResult prof = reparameterize(pot, Vec{0.5}, arc, opts);

  CHECK(prof.curve_length == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(prof.sup_w == doctest::Approx(3.0).epsilon(1e-4));
  CHECK(prof.tau == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(prof.lhs_energy == doctest::Approx(7.0).epsilon(1e-4));
  CHECK(prof.rhs_bound == doctest::Approx(4.0 * std::sqrt(3.0) + 4.0).epsilon(1e-4));
  // constant pace ds/dt = sqrt(1 + 3) / (1 * 1) = 2
  CHECK(prof.gprime[prof.gprime.size() / 2] == doctest::Approx(2.0).epsilon(1e-4));
  // with a constant landscape the lower pinch is attained
  CHECK(prof.tau_lower == doctest::Approx(prof.tau).epsilon(1e-4));
  CHECK(prof.tau_upper == doctest::Approx(2.0).epsilon(1e-6));

  // the table is a valid parameterization
  CHECK(prof.t.front() == doctest::Approx(0.0));
  CHECK(prof.t.back() == doctest::Approx(prof.tau));
  CHECK(prof.s.front() == doctest::Approx(-1.0));
  CHECK(prof.s.back() == doctest::Approx(1.0));
  for (size_t i = 1; i < prof.t.size(); ++i) CHECK(prof.t[i] >= prof.t[i - 1]);

  // constant extension outside [0, tau]
  CHECK(dist(prof.at_time(-0.5), arc.pts.front()) <= 1e-12);
  CHECK(dist(prof.at_time(prof.tau + 0.5), arc.pts.back()) <= 1e-12);
  CHECK(norm(prof.at_time(0.5 * prof.tau)) == doctest::Approx(r0).epsilon(1e-4));

  // the phase-field energy of the tabulated profile matches the s-form value
  CHECK(profile_energy(pot, Vec{0.5}, prof, opts.eps) ==
        doctest::Approx(prof.lhs_energy).epsilon(1e-3));
}

TEST_CASE("well-to-well profile is pinched between the cost bounds") {
  Potential pot = testutil::quartic1(1.0);
  const Vec x{0.5};
  Polyline conn = straight(Vec{-1.0}, Vec{1.0}, 513);

  ProfileOptions opts;
  opts.eps = 0.05;
  opts.lambda = 1e-6;
  ProfileResult prof = reparameterize(pot, x, conn, opts);

  const double sigma = 8.0 / 3.0;
  const double weighted = prof.rhs_bound - 2.0 * std::sqrt(opts.lambda) * prof.curve_length;
  // sandwich: sigma-quadrature <= transition cost <= weighted cost + 2 sqrt(lambda) L
  CHECK(prof.lhs_energy >= weighted - 1e-9);
  CHECK(prof.lhs_energy <= prof.rhs_bound + 1e-12);
  CHECK(weighted == doctest::Approx(sigma).epsilon(1e-3));

  CHECK(prof.tau_lower <= prof.tau + 1e-12);
  CHECK(prof.tau <= prof.tau_upper + 1e-12);
  // the tabulated profile's own phase-field energy reproduces the cost
  CHECK(profile_energy(pot, x, prof, opts.eps) ==
        doctest::Approx(prof.lhs_energy).epsilon(1e-2));
  // and stays within a whisker of the sharp transition constant
  CHECK(profile_energy(pot, x, prof, opts.eps) <= sigma * 1.02);
}

TEST_CASE("pace speeds up where the landscape is shallow") {
  Potential pot = testutil::quartic1(1.0);
  const Vec x{0.5};
  Polyline conn = straight(Vec{-1.0}, Vec{1.0}, 513);
  ProfileOptions opts;
  opts.eps = 0.05;
  opts.lambda = 1e-6;
  ProfileResult prof = reparameterize(pot, x, conn, opts);
  // near the wells W ~ 0, so g' ~ sqrt(lambda)/eps is tiny; at the hump
  // W = 1 gives g' ~ 1/eps
  const double g_mid = prof.gprime[prof.gprime.size() / 2];
  CHECK(g_mid == doctest::Approx(std::sqrt(1.0 + opts.lambda) / opts.eps).epsilon(1e-2));
  CHECK(prof.gprime.front() < 0.05 * g_mid);
  CHECK(prof.gprime.back() < 0.05 * g_mid);
}

TEST_CASE("profile validation") {
  Potential pot = testutil::quartic1(1.0);
  const Vec x{0.5};
  Polyline conn = straight(Vec{-1.0}, Vec{1.0}, 9);
  CHECK(thrown_code([&] {
          ProfileOptions o;
          o.eps = 0.0;
          reparameterize(pot, x, conn, o);
        }) == 3);
  CHECK(thrown_code([&] {
          ProfileOptions o;
          o.lambda = 0.0;
          reparameterize(pot, x, conn, o);
        }) == 3);
  CHECK(thrown_code([&] {
          ProfileOptions o;
          o.table_size = 5;
          reparameterize(pot, x, conn, o);
        }) == 3);
  CHECK(thrown_code([&] {
          Polyline flat;  // zero-length curve
          flat.pts = {Vec{0.5}, Vec{0.5}};
          reparameterize(pot, x, flat, {});
        }) == 3);
}

TEST_CASE("random curves satisfy the transition bound") {
  Potential pot = testutil::minpow2d(2.0);
  const Vec x{0.5};
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    Polyline pl;
    const int inner = rng.uniform_int(1, 4);
    pl.pts.push_back(Vec{-1.0, 0.0});
    for (int i = 0; i < inner; ++i)
      pl.pts.push_back(Vec{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)});
    pl.pts.push_back(Vec{1.0, 0.0});

    ProfileOptions opts;
    opts.eps = rng.uniform(1e-3, 0.5);
    opts.lambda = rng.uniform(1e-8, 1.0);
    opts.table_size = 257;
    ProfileResult prof = reparameterize(pot, x, pl.resample(257), opts);
    const double scale = 1.0 + std::abs(prof.rhs_bound);
    CHECK(prof.lhs_energy <= prof.rhs_bound + 1e-9 * scale);
    CHECK(prof.tau_lower <= prof.tau + 1e-12 * (1.0 + prof.tau));
    CHECK(prof.tau <= prof.tau_upper + 1e-12 * (1.0 + prof.tau_upper));
  }
}

}  // TEST_SUITE
