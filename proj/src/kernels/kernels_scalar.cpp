#include "sourcecount/kernels.hpp"

namespace sourcecount::kernels::scalar {

cdouble dot_conj(const cdouble *a, const cdouble *b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = a[k].real(), ai = a[k].imag();
    const double br = b[k].real(), bi = b[k].imag();
    re += ar * br + ai * bi;
    im += ai * br - ar * bi;
  }
  return {re, im};
}

void axpy(cdouble alpha, const cdouble *x, cdouble *y, std::size_t n) {
  const double c = alpha.real(), d = alpha.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    y[k] = {y[k].real() + (c * xr - d * xi), y[k].imag() + (c * xi + d * xr)};
  }
}

double sum_abs2(const cdouble *x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  }
  return acc;
}

} // namespace sourcecount::kernels::scalar
