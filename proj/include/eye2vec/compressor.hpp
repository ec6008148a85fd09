#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eye2vec/embedding.hpp"
#include "eye2vec/linker.hpp"

namespace eye2vec {

struct EyeVectorMeta {
  std::uint64_t total_transitions = 0;
  std::uint64_t distinct_contexts = 0;
  std::uint64_t embedding_seed = 0;
  std::uint64_t created_from = 0;  // fnv1a64 of the source profile's JSON
  friend bool operator==(const EyeVectorMeta&, const EyeVectorMeta&) = default;
};

// One recording summarized as a 3 * embedding-dim vector.
struct EyeVector {
  std::string recording_id;
  std::vector<double> values;
  bool normalized = false;
  EyeVectorMeta meta;

  std::size_t dim() const noexcept { return values.size(); }
  friend bool operator==(const EyeVector&, const EyeVector&) = default;
};

// Ratio-weighted sum of context vectors, accumulated in ascending context
// string order, then optionally L2-normalized. Throws EmptyProfileError for
// a profile without transitions and ZeroVectorError when normalizing a zero
// sum.
EyeVector compress(const TransitionProfile& profile, const EmbeddingTable& table,
                   bool normalize = true);

// Floats are written in shortest round-trip form, so read(write(v)) == v.
void write_eye_vector_json(std::ostream& out, const EyeVector& v);
std::string eye_vector_json(const EyeVector& v);
EyeVector read_eye_vector_json(std::istream& in);
EyeVector read_eye_vector(const std::filesystem::path& file);

}  // namespace eye2vec
