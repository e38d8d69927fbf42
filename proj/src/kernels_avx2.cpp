// AVX2 variants of the hot 1-D kernels. This translation unit is the only one
// built with -mavx2; callers reach it through the runtime dispatch in
// kernels_scalar.cpp. Each main loop processes 4 cells per iteration and
// finishes with the scalar tail; the 4 lane sums are reduced in fixed lane
// order so the SIMD path itself is deterministic.

#if defined(WELLPATH_BUILD_AVX2)

#include <immintrin.h>

#include <cmath>

#include "wellpath/kernels.hpp"

namespace wellpath::kernels::detail {

namespace {

double reduce_lanes(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return ((lane[0] + lane[1]) + lane[2]) + lane[3];
}

}  // namespace

double quartic_cells_avx2(const double* u, const double* a2, int cells, double* dvdm) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d four = _mm256_set1_pd(4.0);
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= cells; i += 4) {
    const __m256d ua = _mm256_loadu_pd(u + i);
    const __m256d ub = _mm256_loadu_pd(u + i + 1);
    const __m256d m = _mm256_mul_pd(half, _mm256_add_pd(ua, ub));
    const __m256d g = _mm256_sub_pd(_mm256_mul_pd(m, m), _mm256_loadu_pd(a2 + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(g, g));
    if (dvdm) _mm256_storeu_pd(dvdm + i, _mm256_mul_pd(four, _mm256_mul_pd(m, g)));
  }
  double sum = reduce_lanes(acc);
  for (; i < cells; ++i) {
    const double m = 0.5 * (u[i] + u[i + 1]);
    const double g = m * m - a2[i];
    sum += g * g;
    if (dvdm) dvdm[i] = 4.0 * m * g;
  }
  return sum;
}

double minpow2_cells_avx2(const double* u, const double* a, int cells, double* dvdm) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= cells; i += 4) {
    const __m256d ua = _mm256_loadu_pd(u + i);
    const __m256d ub = _mm256_loadu_pd(u + i + 1);
    const __m256d m = _mm256_mul_pd(half, _mm256_add_pd(ua, ub));
    // copysign(a, m): magnitude of a, sign bit of m.
    const __m256d av = _mm256_loadu_pd(a + i);
    const __m256d signed_a = _mm256_or_pd(_mm256_andnot_pd(sign_mask, av),
                                          _mm256_and_pd(sign_mask, m));
    const __m256d d = _mm256_sub_pd(m, signed_a);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    if (dvdm) _mm256_storeu_pd(dvdm + i, _mm256_mul_pd(two, d));
  }
  double sum = reduce_lanes(acc);
  for (; i < cells; ++i) {
    const double m = 0.5 * (u[i] + u[i + 1]);
    const double d = m - std::copysign(a[i], m);
    sum += d * d;
    if (dvdm) dvdm[i] = 2.0 * d;
  }
  return sum;
}

double diff_sq_avx2(const double* u, int cells) {
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= cells; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(u + i + 1), _mm256_loadu_pd(u + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double sum = reduce_lanes(acc);
  for (; i < cells; ++i) {
    const double d = u[i + 1] - u[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace wellpath::kernels::detail

#endif  // WELLPATH_BUILD_AVX2
