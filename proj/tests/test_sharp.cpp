#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wellpath/phasefield.hpp"
#include "wellpath/rng.hpp"
#include "wellpath/sharp.hpp"

using namespace wellpath;
using testutil::thrown_code;

namespace {

// Quartic potential with a coefficient handover at x = 1/2: wells +-1 on the
// left piece, +-2 on the right piece.
Potential handover_potential() {
  WellField l;
  l.kind = WellField::Kind::constant;
  l.value = Vec{1.0};
  WellField r;
  r.kind = WellField::Kind::constant;
  r.value = Vec{2.0};
  return make_quartic_potential(make_interval(0.0, 1.0, {0.5}), {l, r}, 1);
}

// Analytic adapted handover cost between the traces -1 and +2:
// min over r of d_L(-1, r) + d_R(r, 2) with the quartic weights; the optimum
// sits at r = sqrt(5/2).
constexpr double kHandoverValue = 4.125741132772067;

}  // namespace

TEST_SUITE("sharp") {

TEST_CASE("no interfaces, no energy") {
  Potential pot = testutil::quartic1(1.0);
  SharpConfig cfg;
  SharpEnergyReport rep = energy_infty(pot, cfg);
  CHECK(rep.value == doctest::Approx(0.0));
  CHECK(rep.parts.empty());
}

TEST_CASE("single jump charges the transition constant") {
  Potential pot = testutil::quartic1(1.0);
  SharpConfig cfg;
  cfg.jumps = {0.5};
  SharpEnergyReport rep = energy_infty(pot, cfg);
  REQUIRE(rep.parts.size() == 1);
  CHECK(rep.value == doctest::Approx(8.0 / 3.0).epsilon(1e-6));
  CHECK(rep.gap <= 1e-6);
  CHECK(rep.parts[0].where[0] == doctest::Approx(0.5));
  CHECK(rep.parts[0].length == doctest::Approx(1.0));
  CHECK(rep.parts[0].minus[0] == doctest::Approx(-1.0));
  CHECK(rep.parts[0].plus[0] == doctest::Approx(1.0));
  CHECK(!rep.parts[0].adapted);

  // flipping the leftmost phase swaps the traces but not the cost
  SharpConfig flipped = cfg;
  flipped.left_sign = +1;
  SharpEnergyReport rep2 = energy_infty(pot, flipped);
  CHECK(rep2.value == doctest::Approx(rep.value).epsilon(1e-9));
  CHECK(rep2.parts[0].minus[0] == doctest::Approx(1.0));
  CHECK(rep2.parts[0].plus[0] == doctest::Approx(-1.0));
}

TEST_CASE("moving wells charge the local constant") {
  Potential pot = testutil::quartic_poly();  // a(x) = 1 + (x - 1/2)^2 / 2
  SharpConfig cfg;
  cfg.jumps = {0.5};
  CHECK(energy_infty(pot, cfg).value == doctest::Approx(8.0 / 3.0).epsilon(1e-6));

  // off-center the well half-gap is a = 1.03125 and the cost is 8 a^3 / 3
  SharpConfig off;
  off.jumps = {0.25};
  CHECK(energy_infty(pot, off).value == doctest::Approx(2.924560546875).epsilon(1e-6));
}

TEST_CASE("several jumps alternate phases and add up") {
  Potential pot = testutil::quartic_poly();
  SharpConfig cfg;
  cfg.jumps = {0.3, 0.7};
  SharpEnergyReport rep = energy_infty(pot, cfg);
  REQUIRE(rep.parts.size() == 2);
  // a(0.3) = a(0.7) = 1.02, each jump costs 8 * 1.02^3 / 3
  const double each = 8.0 * 1.02 * 1.02 * 1.02 / 3.0;
  CHECK(rep.value == doctest::Approx(2.0 * each).epsilon(1e-6));
  CHECK(rep.parts[0].minus[0] == doctest::Approx(-1.02));
  CHECK(rep.parts[0].plus[0] == doctest::Approx(1.02));
  // the second jump switches back
  CHECK(rep.parts[1].minus[0] == doctest::Approx(1.02));
  CHECK(rep.parts[1].plus[0] == doctest::Approx(-1.02));
}

TEST_CASE("jump on the coefficient handover uses the adapted distance") {
  Potential pot = handover_potential();
  SharpConfig cfg;
  cfg.jumps = {0.5};
  SharpEnergyReport rep = energy_infty(pot, cfg);
  REQUIRE(rep.parts.size() == 1);
  CHECK(rep.parts[0].adapted);
  CHECK(rep.value == doctest::Approx(kHandoverValue).epsilon(1e-5));
  CHECK(rep.parts[0].meeting[0] == doctest::Approx(std::sqrt(2.5)).epsilon(1e-3));

  // never worse than covering the whole handover inside one coefficient
  for (int k = 0; k < 2; ++k) {
    Potential one_sided = restrict_to_subdomain(pot, k);
    const double single =
        geodesic_distance(one_sided, Vec{0.5}, rep.parts[0].minus, rep.parts[0].plus).distance;
    CHECK(rep.value <= single + 1e-9);
  }

  // a jump away from the handover keeps the plain one-sided distance
  SharpConfig plain;
  plain.jumps = {0.25};
  SharpEnergyReport rep2 = energy_infty(pot, plain);
  CHECK(!rep2.parts[0].adapted);
  CHECK(rep2.value == doctest::Approx(8.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("restriction to one subdomain") {
  Potential pot = handover_potential();
  Potential left = restrict_to_subdomain(pot, 0);
  Potential right = restrict_to_subdomain(pot, 1);
  CHECK(left.domain.subdomain_count() == 1);
  CHECK(left.well(Vec{0.9}, +1)[0] == doctest::Approx(1.0));
  CHECK(right.well(Vec{0.1}, +1)[0] == doctest::Approx(2.0));
  CHECK(thrown_code([&] { restrict_to_subdomain(pot, 2); }) == 3);
}

TEST_CASE("1-D configuration validation") {
  Potential pot = testutil::quartic1(1.0);
  CHECK(thrown_code([&] {
          SharpConfig c;
          c.jumps = {0.0};
          energy_infty(pot, c);
        }) == 2);
  CHECK(thrown_code([&] {
          SharpConfig c;
          c.jumps = {0.7, 0.3};
          energy_infty(pot, c);
        }) == 2);
  CHECK(thrown_code([&] {
          SharpConfig c;
          c.jumps = {0.5};
          c.left_sign = 0;
          energy_infty(pot, c);
        }) == 2);
  CHECK(thrown_code([&] {
          SharpConfig c;
          c.interface.pts = {Vec{0.2}, Vec{0.8}};
          energy_infty(pot, c);
        }) == 2);
}

TEST_CASE("planar interfaces charge length times density") {
  WellField w;
  w.kind = WellField::Kind::constant;
  w.value = Vec{1.0};
  Potential pot = make_quartic_potential(make_box2(Vec{0.0, 0.0}, Vec{1.0, 1.0}), {w}, 1);

  SharpConfig vertical;
  vertical.interface.pts = {Vec{0.5, 0.0}, Vec{0.5, 1.0}};
  SharpEnergyReport rep = energy_infty(pot, vertical);
  CHECK(rep.value == doctest::Approx(8.0 / 3.0).epsilon(1e-6));

  // splitting a segment does not change the charge
  SharpConfig split;
  split.interface.pts = {Vec{0.5, 0.0}, Vec{0.5, 0.25}, Vec{0.5, 0.8}, Vec{0.5, 1.0}};
  CHECK(energy_infty(pot, split).value == doctest::Approx(rep.value).epsilon(1e-12));

  SharpConfig diagonal;
  diagonal.interface.pts = {Vec{0.0, 0.0}, Vec{1.0, 1.0}};
  CHECK(energy_infty(pot, diagonal).value ==
        doctest::Approx(std::sqrt(2.0) * 8.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("planar interface on the split line adapts the density") {
  WellField l;
  l.kind = WellField::Kind::constant;
  l.value = Vec{1.0};
  WellField r;
  r.kind = WellField::Kind::constant;
  r.value = Vec{2.0};
  Potential pot = make_quartic_potential(
      make_box2(Vec{0.0, 0.0}, Vec{1.0, 1.0}, {Vec{0.5, 0.0}, Vec{0.5, 1.0}}), {l, r}, 1);

  SharpConfig cfg;
  cfg.interface.pts = {Vec{0.5, 0.0}, Vec{0.5, 1.0}};
  SharpEnergyReport rep = energy_infty(pot, cfg);
  REQUIRE(rep.parts.size() == 1);
  CHECK(rep.parts[0].adapted);
  CHECK(rep.value == doctest::Approx(kHandoverValue).epsilon(1e-5));
}

TEST_CASE("planar configuration validation") {
  WellField w;
  w.kind = WellField::Kind::constant;
  w.value = Vec{1.0};
  Potential pot = make_quartic_potential(make_box2(Vec{0.0, 0.0}, Vec{1.0, 1.0}), {w}, 1);
  CHECK(thrown_code([&] {
          SharpConfig c;
          c.jumps = {0.5};
          energy_infty(pot, c);
        }) == 2);
  CHECK(thrown_code([&] {
          SharpConfig c;
          c.interface.pts = {Vec{0.5, 0.5}};
          energy_infty(pot, c);
        }) == 2);
  CHECK(thrown_code([&] {
          SharpConfig c;
          c.interface.pts = {Vec{0.5, -0.2}, Vec{0.5, 1.0}};
          energy_infty(pot, c);
        }) == 2);
  CHECK(thrown_code([&] {
          SharpConfig c;  // bow-tie: third segment crosses the first
          c.interface.pts = {Vec{0.2, 0.2}, Vec{0.8, 0.2}, Vec{0.8, 0.6}, Vec{0.5, 0.0}};
          energy_infty(pot, c);
        }) == 2);
  CHECK(thrown_code([&] {
          SharpConfig c;
          c.interface.pts = {Vec{0.2, 0.2}, Vec{0.2, 0.2}};
          energy_infty(pot, c);
        }) == 2);
}

TEST_CASE("a closed interface loop is simple") {
  WellField w;
  w.kind = WellField::Kind::constant;
  w.value = Vec{1.0};
  Potential pot = make_quartic_potential(make_box2(Vec{0.0, 0.0}, Vec{1.0, 1.0}), {w}, 1);
  SharpConfig loop;
  loop.interface.pts = {Vec{0.3, 0.3}, Vec{0.7, 0.3}, Vec{0.7, 0.7}, Vec{0.3, 0.7},
                        Vec{0.3, 0.3}};
  SharpEnergyReport rep = energy_infty(pot, loop);
  CHECK(rep.value == doctest::Approx(1.6 * 8.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("phase assignment") {
  Potential pot = testutil::quartic1(1.0);

  Field plus = Field::make_1d(0.0, 1.0, 32);
  for (int i = 0; i < plus.node_count(); ++i) plus.set(i, 0, Vec{1.0});
  PhaseAssignment pa = assign_phases(pot, plus, 0.05);
  CHECK(pa.violation_fraction == doctest::Approx(0.0));
  for (int i = 0; i < 33; ++i) CHECK(pa.indicator.get(i)[0] == doctest::Approx(1.0));

  Field mid = Field::make_1d(0.0, 1.0, 32);
  for (int i = 0; i < mid.node_count(); ++i) mid.set(i, 0, Vec{0.0});
  PhaseAssignment pb = assign_phases(pot, mid, 0.05);
  CHECK(pb.violation_fraction == doctest::Approx(1.0));
  CHECK(pb.indicator.get(16)[0] == doctest::Approx(0.0));

  // a generous tolerance resolves the tie toward the plus phase
  PhaseAssignment pc = assign_phases(pot, mid, 1.5);
  CHECK(pc.violation_fraction == doctest::Approx(0.0));
  CHECK(pc.indicator.get(16)[0] == doctest::Approx(1.0));

  // a sharp transition leaves only a thin undecided strip
  const double eps = 0.005;
  Field trans = Field::make_1d(0.0, 1.0, 2048);
  for (int i = 0; i < trans.node_count(); ++i)
    trans.set(i, 0, Vec{std::tanh((trans.node_pos(i)[0] - 0.5) / eps)});
  PhaseAssignment pd = assign_phases(pot, trans, 0.05);
  CHECK(pd.violation_fraction <= 20.0 * eps);
  CHECK(pd.violation_fraction > 0.0);

  CHECK(thrown_code([&] { assign_phases(pot, plus, 0.0); }) == 3);
}

TEST_CASE("scalar z table") {
  Potential pot = testutil::quartic1(1.0);
  ZTable t = build_z_table(pot, 16);
  CHECK(t.state_dim == 1);
  CHECK(t.delta == doctest::Approx(1.0));  // half the declared well separation
  // z_max = integral over (-1,1) of 2 d (d+2) with d = 1 - |v|: 16/3
  CHECK(t.z_max == doctest::Approx(16.0 / 3.0).epsilon(1e-2));

  CHECK(t.eval(Vec{-1.0}) == doctest::Approx(0.0));
  CHECK(t.eval(Vec{1.0}) == doctest::Approx(t.z_max));
  // clamped into the box and into [0, z_max]
  CHECK(t.eval(Vec{50.0}) <= t.z_max + 1e-12);
  CHECK(t.eval(Vec{-50.0}) >= 0.0);
  // midpoint: z(0) = integral over (-1,0) = half of z_max by symmetry
  CHECK(t.eval(Vec{0.0}) == doctest::Approx(0.5 * t.z_max).epsilon(1e-2));
}

TEST_CASE("planar z table") {
  Potential pot = testutil::minpow2d(2.0);
  ZTable t = build_z_table(pot, 16);
  CHECK(t.state_dim == 2);
  // straight axis route: integral of 2 min|v -+ e1| gives 2
  CHECK(t.z_max == doctest::Approx(2.0).epsilon(0.03));
  CHECK(t.eval(Vec{0.0, 0.0}) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(t.eval(Vec{-1.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-9));

  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    Vec v{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    const double z = t.eval(v);
    CHECK(z >= 0.0);
    CHECK(z <= t.z_max + 1e-12);
  }
}

TEST_CASE("z field flags the interface as a variation jump") {
  Potential pot = testutil::quartic1(1.0);
  const double eps = 0.01;
  Field f = Field::make_1d(0.0, 1.0, 1024);
  for (int i = 0; i < f.node_count(); ++i)
    f.set(i, 0, Vec{std::tanh((f.node_pos(i)[0] - 0.4) / eps)});

  ZTable t = build_z_table(pot, 16);
  Field z = phase_indicator(pot, f, t);
  CHECK(z.state_dim == 1);
  CHECK(z.node_count() == f.node_count());

  // monotone input, monotone z (up to one interpolation slip)
  int drops = 0;
  for (int i = 1; i < z.node_count(); ++i)
    if (z.get(i)[0] < z.get(i - 1)[0] - 1e-9 * t.z_max) ++drops;
  CHECK(drops <= 1);

  // the total variation is one full well-to-well swing
  CHECK(total_variation(z) == doctest::Approx(t.z_max).epsilon(0.02));

  // the annular landscape has no frame to build the table in
  AnnularSpec spec;
  CHECK(thrown_code([&] { build_z_table(make_annular_potential(spec), 8); }) == 3);
}

TEST_CASE("total variation") {
  Field f = Field::make_1d(0.0, 1.0, 64);
  for (int i = 0; i < f.node_count(); ++i) f.set(i, 0, Vec{f.node_pos(i)[0] * 3.0});
  CHECK(total_variation(f) == doctest::Approx(3.0).epsilon(1e-12));

  Field g = Field::make_2d(Vec{0.0, 0.0}, Vec{1.0, 1.0}, 8, 8);
  for (int j = 0; j < g.nodes_y(); ++j)
    for (int i = 0; i < g.nodes_x(); ++i) g.set(i, j, Vec{0.7});
  CHECK(total_variation(g) == doctest::Approx(0.0));

  // 2-D: u = x has |grad| = 1 on the unit square
  for (int j = 0; j < g.nodes_y(); ++j)
    for (int i = 0; i < g.nodes_x(); ++i) g.set(i, j, Vec{g.node_pos(i, j)[0]});
  CHECK(total_variation(g) == doctest::Approx(1.0).epsilon(1e-12));
}

}  // TEST_SUITE
