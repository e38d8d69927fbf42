#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wellpath/domain.hpp"
#include "wellpath/potential.hpp"

using namespace wellpath;
using testutil::thrown_code;

TEST_SUITE("domain") {

TEST_CASE("interval basics") {
  SpatialDomain d = make_interval(0.0, 1.0);
  CHECK(d.dim == 1);
  CHECK(d.measure() == doctest::Approx(1.0));
  CHECK(d.subdomain_count() == 1);
  CHECK(d.contains(Vec{0.5}));
  CHECK(d.contains(Vec{0.0}));
  CHECK(d.contains(Vec{1.0}));
  CHECK(!d.contains(Vec{1.2}));
  CHECK(!d.contains(Vec{-0.1}));
  CHECK(d.subdomain_at(Vec{0.7}) == 0);
}

TEST_CASE("interval partition and tie-breaks") {
  SpatialDomain d = make_interval(0.0, 1.0, {0.25, 0.5});
  CHECK(d.subdomain_count() == 3);
  CHECK(d.subdomain_at(Vec{0.1}) == 0);
  CHECK(d.subdomain_at(Vec{0.3}) == 1);
  CHECK(d.subdomain_at(Vec{0.7}) == 2);
  // points sitting exactly on a breakpoint belong to the lower side
  CHECK(d.subdomain_at(Vec{0.25}) == 0);
  CHECK(d.subdomain_at(Vec{0.5}) == 1);
}

TEST_CASE("interval validation failures") {
  CHECK(thrown_code([] { make_interval(1.0, 0.0).validate(); }) == 2);
  CHECK(thrown_code([] { make_interval(0.0, 0.0).validate(); }) == 2);
  CHECK(thrown_code([] { make_interval(0.0, 1.0, {0.5, 0.5}).validate(); }) == 2);
  CHECK(thrown_code([] { make_interval(0.0, 1.0, {0.5, 0.25}).validate(); }) == 2);
  CHECK(thrown_code([] { make_interval(0.0, 1.0, {0.0}).validate(); }) == 2);
  CHECK(thrown_code([] { make_interval(0.0, 1.0, {1.0}).validate(); }) == 2);
}

TEST_CASE("planar box basics") {
  SpatialDomain d = make_box2(Vec{0.0, 0.0}, Vec{2.0, 1.0});
  CHECK(d.dim == 2);
  CHECK(d.measure() == doctest::Approx(2.0));
  CHECK(d.subdomain_count() == 1);
  CHECK(d.contains(Vec{1.0, 0.5}));
  CHECK(d.contains(Vec{2.0, 1.0}));
  CHECK(!d.contains(Vec{2.1, 0.5}));
  CHECK(!d.contains(Vec{1.0, -0.01}));
}

TEST_CASE("planar split line sides") {
  SpatialDomain d = make_box2(Vec{0.0, 0.0}, Vec{2.0, 1.0},
                              {Vec{1.0, 0.0}, Vec{1.0, 1.0}});
  CHECK(d.subdomain_count() == 2);
  CHECK(d.subdomain_at(Vec{0.2, 0.5}) == 0);
  CHECK(d.subdomain_at(Vec{1.8, 0.5}) == 1);
  // points exactly on the line resolve to the lower index
  CHECK(d.subdomain_at(Vec{1.0, 0.3}) == 0);
}

TEST_CASE("planar split line validation failures") {
  // endpoint off the boundary
  CHECK(thrown_code([] {
          make_box2(Vec{0.0, 0.0}, Vec{2.0, 1.0},
                    {Vec{1.0, 0.2}, Vec{1.0, 1.0}})
              .validate();
        }) == 2);
  // single point is not a split
  CHECK(thrown_code([] {
          make_box2(Vec{0.0, 0.0}, Vec{2.0, 1.0}, {Vec{1.0, 0.0}}).validate();
        }) == 2);
  // self-intersecting polyline (last segment crosses the first)
  CHECK(thrown_code([] {
          make_box2(Vec{0.0, 0.0}, Vec{2.0, 1.0},
                    {Vec{1.0, 0.0}, Vec{1.0, 0.8}, Vec{0.6, 0.4}, Vec{2.0, 0.4}})
              .validate();
        }) == 2);
}

TEST_CASE("power growth function") {
  GrowthFunction f;
  f.kind = GrowthFunction::Kind::power;
  f.alpha = 2.0;
  CHECK(f.eval(3.0) == doctest::Approx(9.0));
  CHECK(f.eval(0.0) == doctest::Approx(0.0));
  CHECK(f.doubling_bound() == doctest::Approx(4.0));
  CHECK(f.antiderivative(2.0) == doctest::Approx(8.0 / 3.0));
  // F(t) = t^3/3, so the left inverse of F at 9 is 3
  CHECK(f.left_inverse_of_antiderivative(9.0) == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("quartic envelope growth function") {
  GrowthFunction f;
  f.kind = GrowthFunction::Kind::quartic_envelope;
  CHECK(f.eval(1.0) == doctest::Approx(9.0));
  CHECK(f.eval(2.0) == doctest::Approx(64.0));
  CHECK(f.antiderivative(1.0) == doctest::Approx(38.0 / 15.0));

  const double C = f.doubling_bound();
  CHECK(C >= 1.0);
  for (double t = 1e-3; t < 8.0; t *= 1.37) {
    CHECK(f.eval(2.0 * t) <= C * f.eval(t) * (1.0 + 1e-12));
  }
  for (double t : {0.25, 1.0, 3.0}) {
    CHECK(f.left_inverse_of_antiderivative(f.antiderivative(t)) ==
          doctest::Approx(t).epsilon(1e-7));
  }
  // monotone and vanishing only at zero
  CHECK(f.eval(1e-9) > 0.0);
  CHECK(f.eval(0.5) < f.eval(0.6));
}

TEST_CASE("well field kinds") {
  WellField c;
  c.kind = WellField::Kind::constant;
  c.value = Vec{1.5};
  CHECK(c.eval(Vec{0.3})[0] == doctest::Approx(1.5));

  WellField aff;
  aff.kind = WellField::Kind::affine;
  aff.value = Vec{1.0};
  aff.origin = Vec{0.0};
  aff.grad[0] = Vec{0.5};
  CHECK(aff.eval(Vec{0.0})[0] == doctest::Approx(1.0));
  CHECK(aff.eval(Vec{1.0})[0] == doctest::Approx(1.5));

  WellField p;
  p.kind = WellField::Kind::poly1d;
  p.coeffs = {1.0, 0.0, 0.5};
  p.origin = Vec{0.5};
  p.axis = Vec{1.0};
  p.direction = Vec{1.0};
  CHECK(p.eval(Vec{0.5})[0] == doctest::Approx(1.0));
  CHECK(p.eval(Vec{1.0})[0] == doctest::Approx(1.125));
  CHECK(p.eval(Vec{0.0})[0] == doctest::Approx(1.125));
}

TEST_CASE("well field gradient bounds") {
  SpatialDomain d = make_interval(0.0, 1.0);

  WellField c;
  c.kind = WellField::Kind::constant;
  c.value = Vec{2.0};
  CHECK(c.gradient_bound(d) == doctest::Approx(0.0));

  WellField aff;
  aff.kind = WellField::Kind::affine;
  aff.value = Vec{1.0};
  aff.grad[0] = Vec{0.5};
  CHECK(aff.gradient_bound(d) == doctest::Approx(0.5));

  WellField p;
  p.kind = WellField::Kind::poly1d;
  p.coeffs = {1.0, 0.0, 0.5};
  p.origin = Vec{0.5};
  p.axis = Vec{1.0};
  p.direction = Vec{1.0};
  // a'(s) = s with |s| <= 1/2 on (0,1); the sampled bound may carry a margin
  const double b = p.gradient_bound(d);
  CHECK(b >= 0.5 - 1e-9);
  CHECK(b <= 1.0);
}

}  // TEST_SUITE
