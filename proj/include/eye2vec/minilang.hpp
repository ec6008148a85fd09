#pragma once

// Tokenizer and recursive-descent parser for the Java-like mini-language the
// pipeline reads. Every token, leaf, and node carries an exact 1-based,
// inclusive, character-based source span. Tabs count as one column.
//
//   program    := classDecl*
//   classDecl  := "class" Ident "{" member* "}"
//   member     := type Ident ( ["=" expr] ";" | "(" params ")" block )
//   type       := "int" | "boolean" | "void" | Ident
//   stmt       := block | varDecl | if | while | for | return | exprStmt
//
// Expressions use precedence climbing: "=" (right-assoc) < "||" < "&&" <
// "==" "!=" < "<" "<=" ">" ">=" < "+" "-" < "*" "/" "%" < unary "!" "-" <
// postfix call / field / index.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eye2vec::minilang {

struct SourcePos {
  int line = 1;
  int col = 1;
  friend auto operator<=>(const SourcePos&, const SourcePos&) = default;
};

struct SourceSpan {
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;

  SourcePos start() const noexcept { return {start_line, start_col}; }
  SourcePos end() const noexcept { return {end_line, end_col}; }
  bool contains(SourcePos p) const noexcept { return start() <= p && p <= end(); }
  bool contains(const SourceSpan& s) const noexcept {
    return start() <= s.start() && s.end() <= end();
  }
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class TokenKind { Identifier, IntLit, BoolLit, StrLit, Keyword, Symbol };

struct Token {
  TokenKind kind;
  std::string lexeme;
  SourceSpan span;
};

// Keywords and punctuation come through as Keyword/Symbol tokens; comments
// and whitespace produce nothing. Throws LexError.
std::vector<Token> tokenize(std::string_view source);

enum class LeafKind { Identifier, IntLit, BoolLit, StrLit, TypeName };

std::string_view leaf_kind_name(LeafKind k) noexcept;

using NodeId = std::uint32_t;

struct LeafToken {
  std::string text;
  LeafKind kind;
  SourceSpan span;
  std::size_t leaf_index = 0;
  NodeId parent = 0;

  friend bool operator==(const LeafToken&, const LeafToken&) = default;
};

struct ChildRef {
  bool is_leaf;
  std::uint32_t index;  // into nodes() or leaves()
};

// For-statement parts that are present, so a printed loop with a single
// expression round-trips to the same slot.
enum ForPart : std::uint8_t { kForInit = 1, kForCond = 2, kForUpdate = 4 };

struct AstNode {
  std::string label;
  SourceSpan span;
  std::vector<ChildRef> children;
  std::optional<NodeId> parent;
  std::uint8_t for_parts = 0;
};

// Immutable arena-backed syntax tree. Nodes are stored in pre-order (the
// root, labelled Program, is node 0) and leaves in source order, so a
// leaf's position in leaves() equals its leaf_index.
class SyntaxTree {
 public:
  static constexpr NodeId kRoot = 0;

  const AstNode& root() const noexcept { return nodes_.front(); }
  const AstNode& node(NodeId id) const { return nodes_.at(id); }
  std::span<const AstNode> nodes() const noexcept { return nodes_; }
  std::span<const LeafToken> leaves() const noexcept { return leaves_; }
  // Root has depth 0.
  int depth(NodeId id) const { return depth_.at(id); }

 private:
  friend class TreeBuilder;
  std::vector<AstNode> nodes_;
  std::vector<LeafToken> leaves_;
  std::vector<int> depth_;
};

// Throws LexError or ParseError.
SyntaxTree parse(std::string_view source);

// Leaves in source order with leaf_index 0, 1, 2, ...
std::vector<LeafToken> leaves(const SyntaxTree& tree);

// Canonical source text for a tree; parse(to_source(t)) is structurally
// equal to t.
std::string to_source(const SyntaxTree& tree);

// Labels, leaf texts/kinds, and shape equal; spans ignored.
bool structurally_equal(const SyntaxTree& a, const SyntaxTree& b);

// The characters of `source` covered by `span` (character columns, not
// bytes). Lines are separated by '\n'.
std::string extract(std::string_view source, const SourceSpan& span);

}  // namespace eye2vec::minilang
