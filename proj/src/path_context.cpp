#include "eye2vec/path_context.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "eye2vec/error.hpp"
#include "eye2vec/hash.hpp"

namespace eye2vec {

using minilang::NodeId;
using minilang::SyntaxTree;

std::string PathContext::str() const {
  std::string s;
  s.reserve(source_text.size() + path_encoding.size() + target_text.size() + 2);
  s += source_text;
  s += ',';
  s += path_encoding;
  s += ',';
  s += target_text;
  return s;
}

PathContext PathContext::make(std::string source, std::string path, std::string target) {
  PathContext c{std::move(source), std::move(path), std::move(target), 0};
  c.hash = fnv1a64(c.str());
  return c;
}

namespace {

// Length of a leaf lexeme at the start of `s`: a quoted string literal with
// escapes, or everything up to the first comma.
std::size_t lexeme_length(std::string_view s) {
  if (!s.starts_with('"')) {
    const auto comma = s.find(',');
    return comma == std::string_view::npos ? s.size() : comma;
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
    } else if (s[i] == '"') {
      return i + 1;
    }
  }
  return std::string_view::npos;
}

}  // namespace

PathContext parse_context_string(std::string_view context) {
  const auto bad = [&] {
    return FormatError(FormatError::Kind::BadDocument, 0,
                       fmt::format("malformed path context \"{}\"", context));
  };
  const std::size_t src_len = lexeme_length(context);
  if (src_len == std::string_view::npos || src_len == 0 || src_len >= context.size() ||
      context[src_len] != ',') {
    throw bad();
  }
  const std::string_view rest = context.substr(src_len + 1);
  const auto comma = rest.find(',');
  if (comma == std::string_view::npos || comma == 0 || comma + 1 >= rest.size()) throw bad();
  return PathContext::make(std::string{context.substr(0, src_len)},
                           std::string{rest.substr(0, comma)},
                           std::string{rest.substr(comma + 1)});
}

namespace {

void check_leaf(const SyntaxTree& tree, const minilang::LeafToken& t) {
  const auto leaves = tree.leaves();
  if (t.leaf_index >= leaves.size() || !(leaves[t.leaf_index] == t)) {
    throw NotALeafError(fmt::format("\"{}\" is not a leaf of this tree", t.text));
  }
}

struct LcaWalk {
  std::vector<NodeId> up;    // a's parent .. child of LCA
  NodeId lca;
  std::vector<NodeId> down;  // child of LCA .. b's parent
};

LcaWalk walk(const SyntaxTree& tree, std::size_t a_index, std::size_t b_index) {
  NodeId a = tree.leaves()[a_index].parent;
  NodeId b = tree.leaves()[b_index].parent;
  LcaWalk w;
  while (tree.depth(a) > tree.depth(b)) {
    w.up.push_back(a);
    a = *tree.node(a).parent;
  }
  while (tree.depth(b) > tree.depth(a)) {
    w.down.push_back(b);
    b = *tree.node(b).parent;
  }
  while (a != b) {
    w.up.push_back(a);
    w.down.push_back(b);
    a = *tree.node(a).parent;
    b = *tree.node(b).parent;
  }
  w.lca = a;
  std::reverse(w.down.begin(), w.down.end());
  return w;
}

void check_pair(const SyntaxTree& tree, std::size_t a_index, std::size_t b_index) {
  const std::size_t n = tree.leaves().size();
  if (a_index >= n || b_index >= n) throw NotALeafError("leaf index out of range");
  if (a_index == b_index) {
    throw SameLeafError(fmt::format("path from leaf {} to itself", a_index));
  }
}

}  // namespace

PathContext path_between(const SyntaxTree& tree, std::size_t a_index, std::size_t b_index) {
  check_pair(tree, a_index, b_index);
  const LcaWalk w = walk(tree, a_index, b_index);
  std::string path;
  for (NodeId id : w.up) {
    path += tree.node(id).label;
    path += kUpArrow;
  }
  path += tree.node(w.lca).label;
  for (NodeId id : w.down) {
    path += kDownArrow;
    path += tree.node(id).label;
  }
  return PathContext::make(tree.leaves()[a_index].text, std::move(path),
                           tree.leaves()[b_index].text);
}

PathContext path_between(const SyntaxTree& tree, const minilang::LeafToken& a,
                         const minilang::LeafToken& b) {
  check_leaf(tree, a);
  check_leaf(tree, b);
  return path_between(tree, a.leaf_index, b.leaf_index);
}

std::size_t path_node_count(const SyntaxTree& tree, std::size_t a_index, std::size_t b_index) {
  check_pair(tree, a_index, b_index);
  const LcaWalk w = walk(tree, a_index, b_index);
  return w.up.size() + 1 + w.down.size();
}

std::vector<PathContext> all_path_contexts(const SyntaxTree& tree, std::size_t max_length,
                                           std::size_t max_width) {
  std::vector<PathContext> out;
  const std::size_t n = tree.leaves().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (max_width != 0 && j - i > max_width) break;
      if (max_length != 0 && path_node_count(tree, i, j) > max_length) continue;
      out.push_back(path_between(tree, i, j));
    }
  }
  return out;
}

}  // namespace eye2vec
