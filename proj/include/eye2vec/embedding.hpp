#pragma once

// Embedding vectors for token texts ("tok:<text>") and path encodings
// ("path:<encoding>"). Keys missing from the loaded table get a
// deterministic unit vector derived from the key and the fallback seed.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "eye2vec/path_context.hpp"

namespace eye2vec {

inline constexpr std::size_t kDefaultEmbeddingDim = 128;
inline constexpr std::uint64_t kDefaultFallbackSeed = 42;

class EmbeddingTable {
 public:
  // Empty table: every lookup uses the fallback generator.
  explicit EmbeddingTable(std::size_t dim = kDefaultEmbeddingDim,
                          std::uint64_t fallback_seed = kDefaultFallbackSeed);

  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t fallback_seed() const noexcept { return fallback_seed_; }
  using Entries = std::map<std::string, std::vector<double>, std::less<>>;
  const Entries& entries() const noexcept { return entries_; }

  // Throws FormatError(DuplicateKey / BadKey / BadArity / NonFinite).
  void insert(std::string key, std::vector<double> values, std::size_t row = 0);

  // Stored vector, or the fallback for an absent key. Throws
  // DegenerateVectorError if the fallback draws an all-zero vector.
  std::vector<double> lookup(std::string_view key) const;

  bool contains(std::string_view key) const;

 private:
  std::size_t dim_;
  std::uint64_t fallback_seed_;
  Entries entries_;
};

// Header line: "eye2vec-embeddings v1 dim=<d>", then "key\tf1 f2 ... fd".
EmbeddingTable load_table(std::istream& in, std::uint64_t fallback_seed = kDefaultFallbackSeed);
EmbeddingTable load_table(const std::filesystem::path& file,
                          std::uint64_t fallback_seed = kDefaultFallbackSeed);
void save_table(std::ostream& out, const EmbeddingTable& table);

// The deterministic fallback vector for `key`: splitmix64 seeded with
// fnv1a64(key) ^ seed, each draw mapped to [-1, 1), then L2-normalized.
std::vector<double> fallback_vector(std::string_view key, std::uint64_t seed, std::size_t dim);

// [tok:source | path:encoding | tok:target], length 3 * dim.
std::vector<double> context_vector(const EmbeddingTable& table, const PathContext& c);

}  // namespace eye2vec
