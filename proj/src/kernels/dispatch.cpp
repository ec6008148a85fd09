#include <atomic>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "eye2vec/kernels.hpp"
#include "kernel_table.hpp"

namespace eye2vec::kernels {
namespace {

bool cpu_supports(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(EYE2VEC_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(EYE2VEC_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const detail::KernelTable& table_for(Backend b) noexcept {
  switch (b) {
#if defined(EYE2VEC_HAVE_AVX2)
    case Backend::Avx2:
      return detail::kAvx2Table;
#endif
#if defined(EYE2VEC_HAVE_NEON)
    case Backend::Neon:
      return detail::kNeonTable;
#endif
    default:
      return detail::kScalarTable;
  }
}

Backend initial_backend() noexcept {
  if (const char* env = std::getenv("EYE2VEC_SIMD")) {
    const std::string_view want{env};
    for (Backend b : available_backends()) {
      if (backend_name(b) == want) return b;
    }
  }
  return available_backends().back();
}

std::atomic<Backend>& active() noexcept {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
    if (cpu_supports(b)) out.push_back(b);
  }
  return out;
}

Backend active_backend() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_backend(Backend b) {
  if (!cpu_supports(b)) {
    throw std::invalid_argument("SIMD backend not available: " + std::string(backend_name(b)));
  }
  active().store(b, std::memory_order_relaxed);
}

double dot(Backend b, std::span<const double> x, std::span<const double> y) noexcept {
  assert(x.size() == y.size());
  return table_for(b).dot(x.data(), y.data(), x.size());
}

double squared_distance(Backend b, std::span<const double> x, std::span<const double> y) noexcept {
  assert(x.size() == y.size());
  return table_for(b).squared_distance(x.data(), y.data(), x.size());
}

void axpy(Backend b, double a, std::span<const double> x, std::span<double> y) noexcept {
  assert(x.size() == y.size());
  table_for(b).axpy(a, x.data(), y.data(), x.size());
}

void scale(Backend b, double a, std::span<double> x) noexcept {
  table_for(b).scale(a, x.data(), x.size());
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
  return dot(active_backend(), x, y);
}

double squared_distance(std::span<const double> x, std::span<const double> y) noexcept {
  return squared_distance(active_backend(), x, y);
}

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  axpy(active_backend(), a, x, y);
}

void scale(double a, std::span<double> x) noexcept { scale(active_backend(), a, x); }

double norm(std::span<const double> x) noexcept { return std::sqrt(dot(x, x)); }

}  // namespace eye2vec::kernels
