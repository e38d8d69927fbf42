#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wellpath/geodesic.hpp"

using namespace wellpath;
using testutil::thrown_code;

TEST_SUITE("geodesic") {

TEST_CASE("scalar distances use the exact integral") {
  Potential pot = testutil::quartic1(1.0);
  const Vec x{0.5};
  GeodesicResult res = geodesic_distance(pot, x, Vec{-1.0}, Vec{1.0});
  CHECK(res.oracle);
  CHECK(res.distance == doctest::Approx(8.0 / 3.0).epsilon(1e-8));
  CHECK(res.gap <= 1e-6);
  CHECK(res.certified);
  CHECK(res.euclid_length == doctest::Approx(2.0));

  // coincident endpoints cost nothing
  CHECK(geodesic_distance(pot, x, Vec{0.3}, Vec{0.3}).distance == doctest::Approx(0.0));

  // a segment that stays away from the wells costs its scalar integral
  GeodesicResult seg = geodesic_distance(pot, x, Vec{1.0}, Vec{2.0});
  // integral of 2 (s^2 - 1) over (1, 2): 2 (7/3 - 1) = 8/3
  CHECK(seg.distance == doctest::Approx(8.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("planar min-power well distance is two and certified") {
  Potential pot = testutil::minpow2d(2.0);
  const Vec x{0.5};
  GeodesicResult res = geodesic_distance(pot, x, Vec{-1.0, 0.0}, Vec{1.0, 0.0});
  CHECK(!res.oracle);
  CHECK(std::abs(res.distance - 2.0) <= 1e-2);
  CHECK(res.certified);
  CHECK(res.gap <= res.distance - res.lower_bound + 1e-15);
  CHECK(res.lower_bound <= res.distance + 1e-12);
  CHECK(std::abs(res.euclid_length - 2.0) <= 0.05);
  CHECK(res.sweeps >= 1);
  // both lower-bound mechanisms produce something useful
  CHECK(res.lb_dijkstra > 1.5);
  CHECK(res.lb_slab > 1.5);
  CHECK(res.growth_audit_ok);
}

TEST_CASE("planar quartic well circle makes the distance collapse") {
  // the zero set of (|u|^2-1)^2 is the whole unit circle, so the two wells
  // are connected at arbitrarily small cost along it
  WellField w;
  w.kind = WellField::Kind::constant;
  w.value = Vec{1.0, 0.0};
  Potential pot = make_quartic_potential(make_interval(0.0, 1.0), {w}, 2);
  GeodesicResult res = geodesic_distance(pot, Vec{0.5}, Vec{-1.0, 0.0}, Vec{1.0, 0.0});
  // far below the straight-chord cost 8/3; the tail of the descent in this
  // perfectly flat valley is slow, so the threshold is generous
  CHECK(res.distance <= 0.15);
  CHECK(res.euclid_length >= 2.5);  // the minimizer hugs the circle, not the chord
}

TEST_CASE("adapted two-sided distance") {
  Potential left = testutil::quartic1(1.0);
  Potential right = testutil::quartic1(2.0);
  const Vec x{0.5};
  AdaptedResult res = adapted_distance(left, right, x, Vec{1.0}, Vec{2.0});
  // analytic optimum of 4/3 r^3 - 10 r + 12 at r = sqrt(5/2)
  CHECK(res.value == doctest::Approx(1.4590744661054).epsilon(1e-6));
  CHECK(res.meeting_point[0] == doctest::Approx(std::sqrt(2.5)).epsilon(1e-4));
  CHECK(res.left_value + res.right_value == doctest::Approx(res.value).epsilon(1e-12));

  // never exceeds either single-sided distance
  const double d_left = geodesic_distance(left, x, Vec{1.0}, Vec{2.0}).distance;
  const double d_right = geodesic_distance(right, x, Vec{1.0}, Vec{2.0}).distance;
  CHECK(res.value <= d_left + 1e-9);
  CHECK(res.value <= d_right + 1e-9);
}

TEST_CASE("truncation level derivation") {
  Potential pot = testutil::quartic1(1.0);
  const Vec x{0.5};
  TruncationCap tc = derive_truncation_cap(pot, x, Vec{-1.0}, Vec{1.0});
  CHECK(tc.a_priori_radius >= 1.0);
  CHECK(tc.sup_w >= 1.0);          // W(x, 0) = 1 sits inside any valid radius
  CHECK(tc.cap == doctest::Approx(4.0 * tc.sup_w));

  GeodesicOptions capped;
  capped.cap = tc.cap;
  GeodesicResult with_cap = geodesic_distance(pot, x, Vec{-1.0}, Vec{1.0}, capped);
  GeodesicResult without = geodesic_distance(pot, x, Vec{-1.0}, Vec{1.0});
  CHECK(with_cap.distance == doctest::Approx(without.distance).epsilon(1e-9));
}

TEST_CASE("truncation does not move the planar distance") {
  Potential pot = testutil::minpow2d(2.0);
  const Vec x{0.5};
  TruncationCap tc = derive_truncation_cap(pot, x, Vec{-1.0, 0.0}, Vec{1.0, 0.0});
  GeodesicOptions capped;
  capped.cap = tc.cap;
  GeodesicResult with_cap = geodesic_distance(pot, x, Vec{-1.0, 0.0}, Vec{1.0, 0.0}, capped);
  GeodesicResult without = geodesic_distance(pot, x, Vec{-1.0, 0.0}, Vec{1.0, 0.0});
  CHECK(std::abs(with_cap.distance - without.distance) <=
        with_cap.gap + without.gap + 1e-9);
}

TEST_CASE("query validation") {
  Potential pot = testutil::minpow2d(2.0);
  const Vec x{0.5};
  CHECK(thrown_code([&] { geodesic_distance(pot, Vec{2.0}, Vec{-1.0, 0.0}, Vec{1.0, 0.0}); }) == 3);
  CHECK(thrown_code([&] {
          GeodesicOptions o;
          o.grid_n = 4;
          geodesic_distance(pot, x, Vec{-1.0, 0.0}, Vec{1.0, 0.0}, o);
        }) == 3);
  CHECK(thrown_code([&] {
          GeodesicOptions o;
          o.box_set = true;
          o.box_lo = Vec{0.0, 0.0};
          o.box_hi = Vec{1.0, 1.0};  // excludes the minus well
          geodesic_distance(pot, x, Vec{-1.0, 0.0}, Vec{1.0, 0.0}, o);
        }) == 3);
  CHECK(thrown_code([&] {
          GeodesicOptions o;
          o.cap = -1.0;
          geodesic_distance(pot, x, Vec{-1.0, 0.0}, Vec{1.0, 0.0}, o);
        }) == 3);
}

TEST_CASE("sub-path locality of a certified minimizer") {
  Potential pot = testutil::minpow2d(2.0);
  const Vec x{0.5};
  GeodesicResult res = geodesic_distance(pot, x, Vec{-1.0, 0.0}, Vec{1.0, 0.0});
  REQUIRE(res.certified);
  LocalityReport rep = verify_locality(pot, x, res, res.gap, 25, 9);
  CHECK(rep.checks == 25);
  CHECK(rep.violations == 0);
}

TEST_CASE("symmetry and triangle inequality at desk scale") {
  Potential pot = testutil::minpow2d(2.0);
  const Vec x{0.5};
  GeodesicOptions o;
  o.compute_lower_bound = false;
  o.run_growth_audit = false;
  const double slack = 2.0 * o.eps_cert;

  const Vec p{-1.0, 0.0}, q{0.3, 0.8}, r{0.5, -0.4};
  const double dpq = geodesic_distance(pot, x, p, q, o).distance;
  const double dqp = geodesic_distance(pot, x, q, p, o).distance;
  CHECK(std::abs(dpq - dqp) <= slack);

  const double dpr = geodesic_distance(pot, x, p, r, o).distance;
  const double drq = geodesic_distance(pot, x, r, q, o).distance;
  CHECK(dpq <= dpr + drq + 3.0 * o.eps_cert);
}

TEST_CASE("annular geodesics wind instead of crossing the barriers") {
  AnnularSpec spec;
  spec.rings = 1;
  Potential pot = make_annular_potential(spec);
  GeodesicOptions o;
  o.grid_n = 201;
  o.vertices = 129;
  o.max_sweeps = 8;
  o.compute_lower_bound = false;
  o.run_growth_audit = true;
  o.box_set = true;
  o.box_lo = Vec{-1.12, -1.12};
  o.box_hi = Vec{1.12, 1.12};
  GeodesicResult res = geodesic_distance(pot, Vec{0.5}, Vec{0.0, 0.0}, Vec{0.0, -1.0}, o);
  // the straight segment has length 1; the forced winding at least doubles it
  CHECK(res.euclid_length >= 2.0);
  // yet the path is cheap because it rides the webs
  CHECK(res.distance <= 0.8);
  // the near-well growth floor degenerates by design
  CHECK(!res.growth_audit_ok);
}

}  // TEST_SUITE
