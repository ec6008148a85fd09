#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eye2vec/minilang.hpp"

namespace eye2vec {

inline constexpr std::string_view kUpArrow = "↑";
inline constexpr std::string_view kDownArrow = "↓";

// A (source token, AST path, target token) triple. The path encoding runs
// from the source leaf's parent up to the lowest common ancestor (each label
// suffixed with an up arrow), then the LCA label, then down to the target's
// parent (each label prefixed with a down arrow).
struct PathContext {
  std::string source_text;
  std::string path_encoding;
  std::string target_text;
  std::uint64_t hash = 0;

  // "source,path,target"
  std::string str() const;

  // Builds a context and computes its hash.
  static PathContext make(std::string source, std::string path, std::string target);

  friend bool operator==(const PathContext&, const PathContext&) = default;
};

// Splits "source,path,target" back into a context. String-literal sources
// may contain commas; everything else is comma-free. Throws FormatError
// (row 0) on a malformed string.
PathContext parse_context_string(std::string_view context);

// Throws NotALeafError / SameLeafError.
PathContext path_between(const minilang::SyntaxTree& tree, const minilang::LeafToken& a,
                         const minilang::LeafToken& b);
PathContext path_between(const minilang::SyntaxTree& tree, std::size_t a_index,
                         std::size_t b_index);

// Number of AST nodes on the path between two leaves (labels in the
// encoding, LCA included).
std::size_t path_node_count(const minilang::SyntaxTree& tree, std::size_t a_index,
                            std::size_t b_index);

inline constexpr std::size_t kDefaultMaxPathLength = 8;
inline constexpr std::size_t kDefaultMaxPathWidth = 2;

// One context per leaf pair (i, j), i < j, filtered by path node count and
// leaf-index distance. A cap of 0 means unlimited. Sorted by (i, j).
std::vector<PathContext> all_path_contexts(const minilang::SyntaxTree& tree,
                                           std::size_t max_length = kDefaultMaxPathLength,
                                           std::size_t max_width = kDefaultMaxPathWidth);

}  // namespace eye2vec
