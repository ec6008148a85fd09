#pragma once

// Dense double-precision kernels behind every vector operation in the
// pipeline (embedding normalization, compression, cosine, k-means).
//
// Each kernel has a scalar reference and SIMD variants (AVX2 on x86-64, NEON
// on AArch64) chosen at runtime. Reductions use a fixed lane-blocked order:
// four interleaved partial sums s0..s3 over the first floor(n/4)*4 elements,
// combined as (s0 + s1) + (s2 + s3), then the tail added left to right. No
// fused multiply-add is used anywhere, so every backend is bit-identical to
// the scalar reference.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace eye2vec::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b) noexcept;

// Backends compiled in and supported by the running CPU. Scalar is always
// first.
std::vector<Backend> available_backends();

// Backend used by the free functions below. Initialized on first use to the
// best available one, or to the value of EYE2VEC_SIMD (scalar|avx2|neon)
// when that names an available backend.
Backend active_backend() noexcept;

// Throws std::invalid_argument if `b` is not available.
void set_active_backend(Backend b);

// sum_i x[i] * y[i]
double dot(std::span<const double> x, std::span<const double> y) noexcept;
// sum_i (x[i] - y[i])^2
double squared_distance(std::span<const double> x, std::span<const double> y) noexcept;
// y[i] += a * x[i]
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;
// x[i] *= a
void scale(double a, std::span<double> x) noexcept;

// Explicit-backend entry points, used by the equivalence tests. Calling one
// for a backend that is not available is undefined.
double dot(Backend b, std::span<const double> x, std::span<const double> y) noexcept;
double squared_distance(Backend b, std::span<const double> x, std::span<const double> y) noexcept;
void axpy(Backend b, double a, std::span<const double> x, std::span<double> y) noexcept;
void scale(Backend b, double a, std::span<double> x) noexcept;

// Convenience wrappers on the active backend.
double norm(std::span<const double> x) noexcept;

}  // namespace eye2vec::kernels
