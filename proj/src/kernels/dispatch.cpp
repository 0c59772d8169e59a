#include <algorithm>
#include <cstdlib>
#include <cstring>

#include "sourcecount/kernels.hpp"

namespace sourcecount::kernels {

namespace {

constexpr KernelTable kScalar{&scalar::dot_conj, &scalar::axpy, &scalar::sum_abs2};
#if defined(SOURCECOUNT_WITH_AVX2)
constexpr KernelTable kAvx2{&avx2::dot_conj, &avx2::axpy, &avx2::sum_abs2};
#endif

bool cpu_has_avx2() {
#if defined(SOURCECOUNT_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa select_isa() {
  if (const char *env = std::getenv("SOURCECOUNT_SIMD"); env && std::strcmp(env, "scalar") == 0) {
    return Isa::Scalar;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

const KernelTable &active_table() {
  static const KernelTable &t = table(active_isa());
  return t;
}

} // namespace

bool isa_available(Isa isa) {
  switch (isa) {
  case Isa::Scalar:
    return true;
  case Isa::Avx2:
    return cpu_has_avx2();
  }
  return false;
}

const KernelTable &table(Isa isa) {
#if defined(SOURCECOUNT_WITH_AVX2)
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) {
    return kAvx2;
  }
#endif
  (void)isa;
  return kScalar;
}

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

cdouble dot_conj(std::span<const cdouble> a, std::span<const cdouble> b) {
  return active_table().dot_conj(a.data(), b.data(), std::min(a.size(), b.size()));
}

void axpy(cdouble alpha, std::span<const cdouble> x, std::span<cdouble> y) {
  active_table().axpy(alpha, x.data(), y.data(), std::min(x.size(), y.size()));
}

double sum_abs2(std::span<const cdouble> x) { return active_table().sum_abs2(x.data(), x.size()); }

} // namespace sourcecount::kernels
