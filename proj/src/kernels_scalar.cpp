#include "wellpath/kernels.hpp"

#include <atomic>
#include <cmath>

namespace wellpath::kernels {

namespace {

std::atomic<bool> g_force_scalar{false};

bool cpu_has_avx2() {
#if defined(WELLPATH_BUILD_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

bool avx2_active() {
  static const bool supported = cpu_has_avx2();
  return supported && !g_force_scalar.load(std::memory_order_relaxed);
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

namespace detail {

double quartic_cells_scalar(const double* u, const double* a2, int cells, double* dvdm) {
  double sum = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double m = 0.5 * (u[i] + u[i + 1]);
    const double g = m * m - a2[i];
    sum += g * g;
    if (dvdm) dvdm[i] = 4.0 * m * g;
  }
  return sum;
}

double minpow2_cells_scalar(const double* u, const double* a, int cells, double* dvdm) {
  double sum = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double m = 0.5 * (u[i] + u[i + 1]);
    const double d = m - std::copysign(a[i], m);
    sum += d * d;
    if (dvdm) dvdm[i] = 2.0 * d;
  }
  return sum;
}

double diff_sq_scalar(const double* u, int cells) {
  double sum = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double d = u[i + 1] - u[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace detail

double quartic_cells(const double* u, const double* a2, int cells, double* dvdm) {
#if defined(WELLPATH_BUILD_AVX2)
  if (avx2_active()) return detail::quartic_cells_avx2(u, a2, cells, dvdm);
#endif
  return detail::quartic_cells_scalar(u, a2, cells, dvdm);
}

double minpow2_cells(const double* u, const double* a, int cells, double* dvdm) {
#if defined(WELLPATH_BUILD_AVX2)
  if (avx2_active()) return detail::minpow2_cells_avx2(u, a, cells, dvdm);
#endif
  return detail::minpow2_cells_scalar(u, a, cells, dvdm);
}

double diff_sq(const double* u, int cells) {
#if defined(WELLPATH_BUILD_AVX2)
  if (avx2_active()) return detail::diff_sq_avx2(u, cells);
#endif
  return detail::diff_sq_scalar(u, cells);
}

}  // namespace wellpath::kernels
