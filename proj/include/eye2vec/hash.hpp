#pragma once

#include <cstdint>
#include <string_view>

namespace eye2vec {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

// 64-bit FNV-1a over the raw bytes of `bytes` (UTF-8 for text).
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = kFnvOffsetBasis;
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= kFnvPrime;
  }
  return h;
}

// splitmix64 generator. Every seeded random choice in the project draws from
// this so results are identical across platforms and standard libraries.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  constexpr double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). `bound` must be positive.
  constexpr std::uint64_t next_below(std::uint64_t bound) noexcept {
    const auto r = static_cast<std::uint64_t>(next_unit() * static_cast<double>(bound));
    return r < bound ? r : bound - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace eye2vec
