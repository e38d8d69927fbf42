#pragma once
// Small fixed-capacity vector arithmetic shared by state-space points (up to
// 3 components) and spatial points (up to 2 coordinates). The active dimension
// is carried by the owning object; unused slots must stay zero so that norms
// and dot products can always run over all three slots.

#include <array>
#include <cmath>

namespace wellpath {

struct Vec {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  Vec() = default;
  explicit Vec(double x) : c{x, 0.0, 0.0} {}
  Vec(double x, double y) : c{x, y, 0.0} {}
  Vec(double x, double y, double z) : c{x, y, z} {}

  double& operator[](int i) { return c[static_cast<size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<size_t>(i)]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < 3; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < 3; ++i) c[i] *= s;
    return *this;
  }
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(double s, Vec a) { return a *= s; }
inline Vec operator*(Vec a, double s) { return a *= s; }
inline Vec operator-(const Vec& a) { return Vec{-a[0], -a[1], -a[2]}; }

inline double dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }
inline double dist(const Vec& a, const Vec& b) { return norm(a - b); }

// Linear interpolation a + t*(b-a).
inline Vec lerp(const Vec& a, const Vec& b, double t) { return a + t * (b - a); }

// 90-degree counterclockwise rotation of the (x, y) slots.
inline Vec perp2(const Vec& a) { return Vec{-a[1], a[0], 0.0}; }

// Angle wrapped to (-pi, pi].
inline double wrap_angle(double t) {
  const double two_pi = 6.283185307179586476925286766559;
  t = std::fmod(t, two_pi);
  if (t <= -3.14159265358979323846)
    t += two_pi;
  else if (t > 3.14159265358979323846)
    t -= two_pi;
  return t;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace wellpath
