#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wellpath/curve.hpp"
#include "wellpath/rng.hpp"

using namespace wellpath;

namespace {

Polyline segment(const Vec& a, const Vec& b, int vertices = 2) {
  Polyline pl;
  for (int i = 0; i < vertices; ++i)
    pl.pts.push_back(lerp(a, b, static_cast<double>(i) / (vertices - 1)));
  return pl;
}

}  // namespace

TEST_SUITE("curve") {

TEST_CASE("polyline arc-length bookkeeping") {
  Polyline pl;
  pl.pts = {Vec{0.0, 0.0}, Vec{3.0, 0.0}, Vec{3.0, 4.0}};
  CHECK(pl.length() == doctest::Approx(7.0));

  auto arcs = pl.arc_table();
  REQUIRE(arcs.size() == 3);
  CHECK(arcs[0] == doctest::Approx(0.0));
  CHECK(arcs[1] == doctest::Approx(3.0));
  CHECK(arcs[2] == doctest::Approx(7.0));

  Vec m = pl.point_at_arc(5.0);
  CHECK(m[0] == doctest::Approx(3.0));
  CHECK(m[1] == doctest::Approx(2.0));
  // clamped outside the range
  CHECK(pl.point_at_arc(-1.0)[0] == doctest::Approx(0.0));
  CHECK(pl.point_at_arc(9.0)[1] == doctest::Approx(4.0));

  Polyline sl = pl.slice_by_arc(1.0, 5.0);
  CHECK(sl.length() == doctest::Approx(4.0));
  CHECK(sl.pts.front()[0] == doctest::Approx(1.0));
  CHECK(sl.pts.back()[1] == doctest::Approx(2.0));

  Polyline rs = pl.resample(3);
  REQUIRE(rs.pts.size() == 3);
  CHECK(rs.pts[1][0] == doctest::Approx(3.0));
  CHECK(rs.pts[1][1] == doctest::Approx(0.5));
  // endpoints survive resampling exactly
  CHECK(rs.pts.front()[0] == 0.0);
  CHECK(rs.pts.back()[1] == 4.0);
}

TEST_CASE("geodesic weight") {
  Potential pot = testutil::quartic1(1.0);
  const Vec x{0.5};
  CHECK(geodesic_weight(pot, x, Vec{0.0}) == doctest::Approx(2.0));
  CHECK(geodesic_weight(pot, x, Vec{1.0}) == doctest::Approx(0.0));
  CHECK(geodesic_weight(pot, x, Vec{0.0}, 0.25) == doctest::Approx(1.0));
}

TEST_CASE("curve cost of the straight well connection") {
  Potential pot = testutil::quartic1(1.0);
  const Vec x{0.5};
  Polyline straight = segment(Vec{-1.0}, Vec{1.0});
  CurveCost c = curve_cost(pot, x, straight);
  CHECK(c.value == doctest::Approx(8.0 / 3.0).epsilon(1e-4));
  CHECK(c.error_estimate >= 0.0);
  CHECK(c.error_estimate < 1e-3);
  double sum = 0.0;
  for (double s : c.per_segment) sum += s;
  CHECK(sum == doctest::Approx(c.value).epsilon(1e-12));

  // a deeper subdivision budget tightens the value
  QuadratureOptions deep;
  deep.max_subdiv = 8192;
  deep.rel_tol = 1e-10;
  CHECK(curve_cost(pot, x, straight, kNoCap, deep).value ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-7));

  // the value is a property of the trace, not of the sampling
  CurveCost fine = curve_cost(pot, x, straight.resample(17));
  CHECK(fine.value == doctest::Approx(c.value).epsilon(1e-4));

  // fixed-subdivision fast path agrees on smooth integrands
  CHECK(curve_cost_fixed(pot, x, straight, kNoCap, 64) ==
        doctest::Approx(c.value).epsilon(1e-4));
}

TEST_CASE("curve cost with a weight cap") {
  Potential pot = testutil::quartic1(1.0);
  const Vec x{0.5};
  Polyline straight = segment(Vec{-1.0}, Vec{1.0}, 9);
  // capping the quartic at 1/4 flattens the middle: (8 - 2 sqrt(2)) / 3
  const double expected = (8.0 - 2.0 * std::sqrt(2.0)) / 3.0;
  CHECK(curve_cost(pot, x, straight, 0.25).value ==
        doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("adaptive quadrature survives a coincidental plateau") {
  // On this segment the 4- and 8-point midpoint sums agree to machine
  // precision while both sit 3% below the integral; a stop rule that trusts
  // one agreeing doubling returns 5.3529 here.  Exact value:
  //   int 2|u^2-1| du over [-1.6590, 1.8396]  =  5.530450...
  Potential pot = testutil::quartic1(1.0);
  const Vec x{0.5};
  Polyline seg = segment(Vec{1.8396}, Vec{-1.6590}, 2);
  const CurveCost cost = curve_cost(pot, x, seg);
  const auto F = [](double u) { return u * u * u / 3.0 - u; };
  const double exact = 2.0 * (F(-1.0) - F(-1.6590) + 4.0 / 3.0 + F(1.8396) - F(1.0));
  CHECK(cost.value == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("scalar cost integral") {
  const Vec x{0.5};
  ScalarSigma s = scalar_sigma(testutil::quartic1(1.0), x, -1.0, 1.0);
  CHECK(s.value == doctest::Approx(8.0 / 3.0).epsilon(1e-9));
  CHECK(s.error_estimate < 1e-6);

  // orientation does not matter
  ScalarSigma rev = scalar_sigma(testutil::quartic1(1.0), x, 1.0, -1.0);
  CHECK(rev.value == doctest::Approx(s.value).epsilon(1e-12));

  // moving wells scale the well-to-well cost like a^3
  Potential aff = testutil::quartic_affine();
  ScalarSigma m = scalar_sigma(aff, Vec{1.0}, -1.5, 1.5);
  CHECK(m.value == doctest::Approx(9.0).epsilon(1e-9));

  // min-power, exponent 2: 2 * integral of (1 - |s|) over (-1, 1)
  ScalarSigma mp = scalar_sigma(testutil::minpow1d(2.0), x, -1.0, 1.0);
  CHECK(mp.value == doctest::Approx(2.0).epsilon(1e-9));

  // capped quartic well connection
  ScalarSigma capped = scalar_sigma(testutil::quartic1(1.0), x, -1.0, 1.0, 0.25);
  CHECK(capped.value ==
        doctest::Approx((8.0 - 2.0 * std::sqrt(2.0)) / 3.0).epsilon(1e-6));
}

TEST_CASE("scalar cost is additive along the segment") {
  Potential pot = testutil::quartic1(1.0);
  const Vec x{0.5};
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    double p = rng.uniform(-2.0, 2.0);
    double q = rng.uniform(-2.0, 2.0);
    double r = p + (q - p) * rng.uniform(0.0, 1.0);
    double whole = scalar_sigma(pot, x, p, q).value;
    double split = scalar_sigma(pot, x, p, r).value + scalar_sigma(pot, x, r, q).value;
    CHECK(whole == doctest::Approx(split).epsilon(1e-8));
  }
}

TEST_CASE("min-power curve cost matches the scalar integral in the plane") {
  Potential pot = testutil::minpow2d(2.0);
  Polyline straight = segment(Vec{-1.0, 0.0}, Vec{1.0, 0.0}, 5);
  CHECK(curve_cost(pot, Vec{0.5}, straight).value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("polar arc") {
  PolarArc quarter = polar_arc(Vec{1.0, 0.0}, Vec{0.0, 1.0});
  CHECK(quarter.length == doctest::Approx(kPi / 2.0).epsilon(1e-6));
  CHECK(dist(quarter.curve.pts.front(), Vec{1.0, 0.0}) <= 1e-12);
  CHECK(dist(quarter.curve.pts.back(), Vec{0.0, 1.0}) <= 1e-12);

  // the polyline trace follows the same arc
  CHECK(quarter.curve.length() == doctest::Approx(kPi / 2.0).epsilon(1e-3));

  CHECK(polar_arc(Vec{0.5, 0.5}, Vec{0.5, 0.5}).length == doctest::Approx(0.0));

  Rng rng(5);
  for (int i = 0; i < 12; ++i) {
    Vec p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    Vec q{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    PolarArc arc = polar_arc(p, q);
    const double rp = std::hypot(p[0], p[1]);
    const double rq = std::hypot(q[0], q[1]);
    CHECK(arc.length <= std::abs(rp - rq) + 2.0 * kPi * std::max(rp, rq) + 1e-9);
    CHECK(arc.length >= dist(p, q) - 1e-9);
  }
}

}  // TEST_SUITE
