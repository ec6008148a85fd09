#pragma once

#include <cstddef>

namespace eye2vec::kernels::detail {

// Raw-pointer signatures; the public span API validates lengths before
// reaching these.
struct KernelTable {
  double (*dot)(const double* x, const double* y, std::size_t n) noexcept;
  double (*squared_distance)(const double* x, const double* y, std::size_t n) noexcept;
  void (*axpy)(double a, const double* x, double* y, std::size_t n) noexcept;
  void (*scale)(double a, double* x, std::size_t n) noexcept;
};

extern const KernelTable kScalarTable;
#if defined(EYE2VEC_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(EYE2VEC_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif

}  // namespace eye2vec::kernels::detail
