#pragma once
// Hot array kernels for the 1-D scalar phase-field loops: cell potential sums
// (with the per-cell derivative as a by-product) and squared-difference sums.
// Each kernel has a scalar reference implementation and an AVX2 variant
// compiled in its own translation unit; dispatch happens at runtime from CPU
// capability, with a force-scalar hook so tests can compare the two paths.
// SIMD accumulation order differs from scalar, so results agree to relative
// round-off (~1e-14), not bit-for-bit.

namespace wellpath::kernels {

// True when the AVX2 variants are compiled in, the CPU supports them, and
// force_scalar(true) has not been called.
bool avx2_active();
void force_scalar(bool on);

// sum_i (m_i^2 - a2_i)^2 with m_i = (u_i + u_{i+1})/2, i < cells.
// When dvdm != nullptr, dvdm[i] = 4 m_i (m_i^2 - a2_i).
double quartic_cells(const double* u, const double* a2, int cells, double* dvdm);

// sum_i (|m_i| - a_i)^2 (min-power family, exponent 2, scalar wells +-a_i).
// When dvdm != nullptr, dvdm[i] = 2 (m_i - copysign(a_i, m_i)); ties at
// m_i = +0.0 take the "+" branch, matching the state gradient convention.
double minpow2_cells(const double* u, const double* a, int cells, double* dvdm);

// sum_i (u_{i+1} - u_i)^2, i < cells.
double diff_sq(const double* u, int cells);

namespace detail {
double quartic_cells_scalar(const double* u, const double* a2, int cells, double* dvdm);
double minpow2_cells_scalar(const double* u, const double* a, int cells, double* dvdm);
double diff_sq_scalar(const double* u, int cells);
#if defined(WELLPATH_BUILD_AVX2)
double quartic_cells_avx2(const double* u, const double* a2, int cells, double* dvdm);
double minpow2_cells_avx2(const double* u, const double* a, int cells, double* dvdm);
double diff_sq_avx2(const double* u, int cells);
#endif
}  // namespace detail

}  // namespace wellpath::kernels
