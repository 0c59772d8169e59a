// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include "sourcecount/kernels.hpp"

namespace sourcecount::kernels::avx2 {

namespace {

// std::complex<double> is layout-compatible with double[2].
inline const double *raw(const cdouble *p) { return reinterpret_cast<const double *>(p); }
inline double *raw(cdouble *p) { return reinterpret_cast<double *>(p); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (odd lanes) - (even lanes)
inline double hsum_odd_minus_even(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[1] - t[0]) + (t[3] - t[2]);
}

} // namespace

cdouble dot_conj(const cdouble *a, const cdouble *b, std::size_t n) {
  const double *pa = raw(a);
  const double *pb = raw(b);
  // re lanes: [ar*br, ai*bi, ...]; im lanes: [ar*bi, ai*br, ...]
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * k);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * k);
    const __m256d a1 = _mm256_loadu_pd(pa + 2 * k + 4);
    const __m256d b1 = _mm256_loadu_pd(pb + 2 * k + 4);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    re1 = _mm256_fmadd_pd(a1, b1, re1);
    im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
    im1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), im1);
  }
  for (; k + 2 <= n; k += 2) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * k);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * k);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
  }
  double re = hsum(_mm256_add_pd(re0, re1));
  double im = hsum_odd_minus_even(_mm256_add_pd(im0, im1));
  for (; k < n; ++k) {
    const double ar = a[k].real(), ai = a[k].imag();
    const double br = b[k].real(), bi = b[k].imag();
    re += ar * br + ai * bi;
    im += ai * br - ar * bi;
  }
  return {re, im};
}

void axpy(cdouble alpha, const cdouble *x, cdouble *y, std::size_t n) {
  const double *px = raw(x);
  double *py = raw(y);
  const __m256d c = _mm256_set1_pd(alpha.real());
  const __m256d d = _mm256_set1_pd(alpha.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(px + 2 * k);
    const __m256d yv = _mm256_loadu_pd(py + 2 * k);
    // even lanes: c*xr - d*xi, odd lanes: c*xi + d*xr
    const __m256d cross = _mm256_mul_pd(d, _mm256_permute_pd(xv, 0b0101));
    const __m256d prod = _mm256_fmaddsub_pd(c, xv, cross);
    _mm256_storeu_pd(py + 2 * k, _mm256_add_pd(yv, prod));
  }
  for (; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    y[k] = {y[k].real() + (alpha.real() * xr - alpha.imag() * xi),
            y[k].imag() + (alpha.real() * xi + alpha.imag() * xr)};
  }
}

double sum_abs2(const cdouble *x, std::size_t n) {
  const double *px = raw(x);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d v0 = _mm256_loadu_pd(px + 2 * k);
    const __m256d v1 = _mm256_loadu_pd(px + 2 * k + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) {
    acc += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  }
  return acc;
}

} // namespace sourcecount::kernels::avx2
