#pragma once
// Shared fixtures for the unit suites: the standard potentials the tests
// exercise, plus a small helper that surfaces the typed error code of a
// throwing call.

#include <functional>
#include <string>
#include <vector>

#include "wellpath/domain.hpp"
#include "wellpath/errors.hpp"
#include "wellpath/potential.hpp"

namespace testutil {

using namespace wellpath;

// Quartic family, one state component, constant wells +-a, domain (0,1).
inline Potential quartic1(double a = 1.0) {
  WellField w;
  w.kind = WellField::Kind::constant;
  w.value = Vec{a};
  return make_quartic_potential(make_interval(0.0, 1.0), {w}, 1);
}

// Quartic family with the moving well a(x) = 1 + x/2 on (0,1).
inline Potential quartic_affine() {
  WellField w;
  w.kind = WellField::Kind::affine;
  w.value = Vec{1.0};
  w.origin = Vec{0.0};
  w.grad[0] = Vec{0.5};
  return make_quartic_potential(make_interval(0.0, 1.0), {w}, 1);
}

// Quartic family with the wandering well a(x) = 1 + (x - 1/2)^2 / 2 on (0,1).
inline Potential quartic_poly() {
  WellField w;
  w.kind = WellField::Kind::poly1d;
  w.coeffs = {1.0, 0.0, 0.5};
  w.origin = Vec{0.5};
  w.axis = Vec{1.0};
  w.direction = Vec{1.0};
  return make_quartic_potential(make_interval(0.0, 1.0), {w}, 1);
}

// Min-power family with exponent q, planar states, constant wells +-e1.
inline Potential minpow2d(double q = 2.0) {
  WellField w;
  w.kind = WellField::Kind::constant;
  w.value = Vec{1.0, 0.0};
  return make_min_power_potential(make_interval(0.0, 1.0), {w}, 2, q);
}

// Min-power family with one state component, constant wells +-1.
inline Potential minpow1d(double q = 2.0) {
  WellField w;
  w.kind = WellField::Kind::constant;
  w.value = Vec{1.0};
  return make_min_power_potential(make_interval(0.0, 1.0), {w}, 1, q);
}

// Runs f and reports the typed error code it throws (0 when it does not).
inline int thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return static_cast<int>(e.code());
  } catch (...) {
    return -1;
  }
  return 0;
}

}  // namespace testutil
