#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "sourcecount/types.hpp"

// Data-parallel inner loops used by snapshot synthesis and covariance
// estimation. Every kernel has a portable scalar reference and, on x86-64,
// an AVX2+FMA variant; the variant is chosen once at first use from CPUID.
// Setting SOURCECOUNT_SIMD=scalar forces the reference path.
namespace sourcecount::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  /// sum_k a[k] * conj(b[k])
  cdouble (*dot_conj)(const cdouble *a, const cdouble *b, std::size_t n);
  /// y[k] += alpha * x[k]
  void (*axpy)(cdouble alpha, const cdouble *x, cdouble *y, std::size_t n);
  /// sum_k |x[k]|^2
  double (*sum_abs2)(const cdouble *x, std::size_t n);
};

namespace scalar {
cdouble dot_conj(const cdouble *a, const cdouble *b, std::size_t n);
void axpy(cdouble alpha, const cdouble *x, cdouble *y, std::size_t n);
double sum_abs2(const cdouble *x, std::size_t n);
} // namespace scalar

namespace avx2 {
cdouble dot_conj(const cdouble *a, const cdouble *b, std::size_t n);
void axpy(cdouble alpha, const cdouble *x, cdouble *y, std::size_t n);
double sum_abs2(const cdouble *x, std::size_t n);
} // namespace avx2

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);

/// Table for a specific ISA. Falls back to scalar if `isa` is unavailable.
const KernelTable &table(Isa isa);

/// The ISA selected for this process.
Isa active_isa();
std::string_view isa_name(Isa isa);

// Convenience wrappers over the active table.
cdouble dot_conj(std::span<const cdouble> a, std::span<const cdouble> b);
void axpy(cdouble alpha, std::span<const cdouble> x, std::span<cdouble> y);
double sum_abs2(std::span<const cdouble> x);

} // namespace sourcecount::kernels
