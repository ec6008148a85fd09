#include "eye2vec/minilang.hpp"

#include <array>
#include <charconv>
#include <memory>
#include <string>
#include <utility>
#include <variant>

#include <fmt/format.h>

#include "eye2vec/error.hpp"

namespace eye2vec::minilang {
namespace {

constexpr std::array<std::string_view, 11> kKeywords = {
    "class", "if", "else", "while", "for", "return", "int", "boolean", "void", "true", "false"};

// Longest first so that "==" wins over "=".
constexpr std::array<std::string_view, 24> kSymbols = {
    "==", "!=", "<=", ">=", "&&", "||", "{", "}", "(", ")", ";", ",",
    "=",  "<",  ">",  "+",  "-",  "*",  "/", "%", "!", ".", "[", "]"};

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

bool is_keyword(std::string_view s) {
  for (auto k : kKeywords) {
    if (k == s) return true;
  }
  return false;
}

// Byte length of the UTF-8 sequence starting at `s[pos]`, or 0 if invalid.
std::size_t utf8_length(std::string_view s, std::size_t pos) {
  const auto c = static_cast<unsigned char>(s[pos]);
  std::size_t len = 0;
  if (c < 0x80) return 1;
  if ((c & 0xE0) == 0xC0) {
    len = 2;
  } else if ((c & 0xF0) == 0xE0) {
    len = 3;
  } else if ((c & 0xF8) == 0xF0) {
    len = 4;
  } else {
    return 0;
  }
  if (pos + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    if ((static_cast<unsigned char>(s[pos + k]) & 0xC0) != 0x80) return 0;
  }
  return len;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        skip_block_comment();
      } else if (is_ident_start(c)) {
        out.push_back(lex_word());
      } else if (is_digit(c)) {
        out.push_back(lex_int());
      } else if (c == '"') {
        out.push_back(lex_string());
      } else {
        out.push_back(lex_symbol());
      }
    }
    return out;
  }

  SourcePos position() const { return {line_, col_}; }

 private:
  char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
      ++pos_;
      return;
    }
    const std::size_t len = utf8_length(src_, pos_);
    if (len == 0) throw LexError(line_, col_, "invalid UTF-8 sequence");
    pos_ += len;
    ++col_;
  }

  // Span of the characters consumed since (start_line, start_col); the
  // current position is one past the last one.
  SourceSpan span_from(SourcePos start) const {
    return SourceSpan{start.line, start.col, line_, col_ - 1};
  }

  void skip_block_comment() {
    const SourcePos start = position();
    advance();
    advance();
    while (pos_ < src_.size()) {
      if (src_[pos_] == '*' && peek(1) == '/') {
        advance();
        advance();
        return;
      }
      advance();
    }
    throw LexError(start.line, start.col, "unterminated block comment");
  }

  Token lex_word() {
    const SourcePos start = position();
    const std::size_t begin = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
    std::string text{src_.substr(begin, pos_ - begin)};
    TokenKind kind = TokenKind::Identifier;
    if (text == "true" || text == "false") {
      kind = TokenKind::BoolLit;
    } else if (is_keyword(text)) {
      kind = TokenKind::Keyword;
    }
    return Token{kind, std::move(text), span_from(start)};
  }

  Token lex_int() {
    const SourcePos start = position();
    const std::size_t begin = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
    const std::string_view text = src_.substr(begin, pos_ - begin);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{}) {
      throw LexError(start.line, start.col, "integer literal out of 64-bit range");
    }
    return Token{TokenKind::IntLit, std::string{text}, span_from(start)};
  }

  Token lex_string() {
    const SourcePos start = position();
    const std::size_t begin = pos_;
    advance();
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw LexError(start.line, start.col, "unterminated string literal");
      }
      const char c = src_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        const SourcePos esc = position();
        advance();
        if (pos_ >= src_.size()) throw LexError(start.line, start.col, "unterminated string literal");
        const char e = src_[pos_];
        if (e != '"' && e != '\\' && e != 'n' && e != 't' && e != 'r' && e != '0') {
          throw LexError(esc.line, esc.col, "invalid escape sequence");
        }
        advance();
        continue;
      }
      if (static_cast<unsigned char>(c) < 0x20) {
        const SourcePos p = position();
        throw LexError(p.line, p.col, "control character in string literal");
      }
      advance();
    }
    return Token{TokenKind::StrLit, std::string{src_.substr(begin, pos_ - begin)}, span_from(start)};
  }

  Token lex_symbol() {
    const SourcePos start = position();
    const std::string_view rest = src_.substr(pos_);
    for (auto sym : kSymbols) {
      if (rest.starts_with(sym)) {
        for (std::size_t k = 0; k < sym.size(); ++k) advance();
        return Token{TokenKind::Symbol, std::string{sym}, span_from(start)};
      }
    }
    const auto c = static_cast<unsigned char>(src_[pos_]);
    if (c < 0x20 || c == 0x7F) {
      throw LexError(start.line, start.col, fmt::format("illegal character U+{:04X}", c));
    }
    if (c < 0x80) {
      throw LexError(start.line, start.col, fmt::format("unexpected character '{}'", src_[pos_]));
    }
    throw LexError(start.line, start.col, "non-ASCII character outside string or comment");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Owning tree produced while parsing; flattened into SyntaxTree afterwards.
struct PNode;
struct PLeaf {
  std::string text;
  LeafKind kind;
  SourceSpan span;
};
using PChild = std::variant<std::unique_ptr<PNode>, PLeaf>;
struct PNode {
  std::string label;
  SourceSpan span;
  std::vector<PChild> children;
  std::uint8_t for_parts = 0;
};

std::unique_ptr<PNode> make_node(std::string label) {
  auto n = std::make_unique<PNode>();
  n->label = std::move(label);
  return n;
}

const std::string* label_of(const PChild& c) {
  if (const auto* n = std::get_if<std::unique_ptr<PNode>>(&c)) return &(*n)->label;
  return nullptr;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, SourcePos eof) : toks_(std::move(tokens)), eof_(eof) {}

  std::unique_ptr<PNode> program() {
    auto root = make_node("Program");
    const std::size_t start = i_;
    while (!at_end()) root->children.emplace_back(class_decl());
    if (toks_.empty()) {
      root->span = SourceSpan{1, 1, 1, 1};
    } else {
      root->span = span_since(start);
    }
    return root;
  }

 private:
  bool at_end() const { return i_ >= toks_.size(); }

  const Token* peek(std::size_t k = 0) const {
    return i_ + k < toks_.size() ? &toks_[i_ + k] : nullptr;
  }

  bool at_symbol(std::string_view s, std::size_t k = 0) const {
    const Token* t = peek(k);
    return t && t->kind == TokenKind::Symbol && t->lexeme == s;
  }
  bool at_keyword(std::string_view s, std::size_t k = 0) const {
    const Token* t = peek(k);
    return t && t->kind == TokenKind::Keyword && t->lexeme == s;
  }
  bool at_kind(TokenKind kind, std::size_t k = 0) const {
    const Token* t = peek(k);
    return t && t->kind == kind;
  }

  [[noreturn]] void fail(std::string expected) const {
    if (at_end()) throw ParseError(eof_.line, eof_.col, std::move(expected), "end of input");
    const Token& t = toks_[i_];
    throw ParseError(t.span.start_line, t.span.start_col, std::move(expected),
                     fmt::format("\"{}\"", t.lexeme));
  }

  const Token& take() { return toks_[i_++]; }

  void expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail(fmt::format("\"{}\"", s));
    ++i_;
  }
  void expect_keyword(std::string_view s) {
    if (!at_keyword(s)) fail(fmt::format("\"{}\"", s));
    ++i_;
  }

  PLeaf expect_ident_leaf() {
    if (!at_kind(TokenKind::Identifier)) fail("identifier");
    const Token& t = take();
    return PLeaf{t.lexeme, LeafKind::Identifier, t.span};
  }

  SourceSpan span_since(std::size_t start_tok) const {
    const SourceSpan& a = toks_[start_tok].span;
    const SourceSpan& b = toks_[i_ - 1].span;
    return SourceSpan{a.start_line, a.start_col, b.end_line, b.end_col};
  }

  std::unique_ptr<PNode> finish(std::unique_ptr<PNode> n, std::size_t start_tok) const {
    n->span = span_since(start_tok);
    return n;
  }

  bool at_type_start() const {
    return at_keyword("int") || at_keyword("boolean") || at_keyword("void") ||
           at_kind(TokenKind::Identifier);
  }

  std::unique_ptr<PNode> type_ref() {
    if (!at_type_start()) fail("type");
    const std::size_t start = i_;
    const Token& t = take();
    auto n = make_node("TypeRef");
    n->children.emplace_back(PLeaf{t.lexeme, LeafKind::TypeName, t.span});
    return finish(std::move(n), start);
  }

  std::unique_ptr<PNode> class_decl() {
    const std::size_t start = i_;
    expect_keyword("class");
    auto n = make_node("ClassDecl");
    n->children.emplace_back(expect_ident_leaf());
    expect_symbol("{");
    while (!at_symbol("}")) {
      if (!at_type_start()) fail("type or \"}\"");
      n->children.emplace_back(member());
    }
    expect_symbol("}");
    return finish(std::move(n), start);
  }

  std::unique_ptr<PNode> member() {
    const std::size_t start = i_;
    auto type = type_ref();
    PLeaf name = expect_ident_leaf();
    if (at_symbol("(")) {
      auto n = make_node("MethodDecl");
      n->children.emplace_back(std::move(type));
      n->children.emplace_back(std::move(name));
      ++i_;
      if (!at_symbol(")")) {
        if (!at_type_start()) fail("type or \")\"");
        n->children.emplace_back(param());
        while (at_symbol(",")) {
          ++i_;
          n->children.emplace_back(param());
        }
      }
      expect_symbol(")");
      n->children.emplace_back(block());
      return finish(std::move(n), start);
    }
    if (!at_symbol("=") && !at_symbol(";")) fail("\"(\", \"=\" or \";\"");
    auto n = make_node("FieldDecl");
    n->children.emplace_back(std::move(type));
    n->children.emplace_back(std::move(name));
    if (at_symbol("=")) {
      ++i_;
      n->children.emplace_back(expression());
    }
    expect_symbol(";");
    return finish(std::move(n), start);
  }

  std::unique_ptr<PNode> param() {
    const std::size_t start = i_;
    auto n = make_node("Param");
    n->children.emplace_back(type_ref());
    n->children.emplace_back(expect_ident_leaf());
    return finish(std::move(n), start);
  }

  std::unique_ptr<PNode> block() {
    const std::size_t start = i_;
    expect_symbol("{");
    auto n = make_node("Block");
    while (!at_symbol("}")) {
      if (at_end()) fail("statement or \"}\"");
      n->children.emplace_back(statement());
    }
    ++i_;
    return finish(std::move(n), start);
  }

  bool at_var_decl() const {
    if (at_keyword("int") || at_keyword("boolean") || at_keyword("void")) return true;
    return at_kind(TokenKind::Identifier) && at_kind(TokenKind::Identifier, 1);
  }

  std::unique_ptr<PNode> statement() {
    if (at_symbol("{")) return block();
    if (at_keyword("if")) return if_stmt();
    if (at_keyword("while")) return while_stmt();
    if (at_keyword("for")) return for_stmt();
    if (at_keyword("return")) return return_stmt();
    if (at_var_decl()) return var_decl();
    return expr_stmt();
  }

  std::unique_ptr<PNode> var_decl() {
    const std::size_t start = i_;
    auto n = make_node("VarDecl");
    n->children.emplace_back(type_ref());
    n->children.emplace_back(expect_ident_leaf());
    if (at_symbol("=")) {
      ++i_;
      n->children.emplace_back(expression());
    }
    expect_symbol(";");
    return finish(std::move(n), start);
  }

  std::unique_ptr<PNode> expr_stmt() {
    const std::size_t start = i_;
    auto n = make_node("ExprStmt");
    n->children.emplace_back(expression());
    expect_symbol(";");
    return finish(std::move(n), start);
  }

  std::unique_ptr<PNode> if_stmt() {
    const std::size_t start = i_;
    ++i_;
    auto n = make_node("If");
    expect_symbol("(");
    n->children.emplace_back(expression());
    expect_symbol(")");
    n->children.emplace_back(statement());
    if (at_keyword("else")) {
      ++i_;
      n->children.emplace_back(statement());
    }
    return finish(std::move(n), start);
  }

  std::unique_ptr<PNode> while_stmt() {
    const std::size_t start = i_;
    ++i_;
    auto n = make_node("While");
    expect_symbol("(");
    n->children.emplace_back(expression());
    expect_symbol(")");
    n->children.emplace_back(statement());
    return finish(std::move(n), start);
  }

  std::unique_ptr<PNode> for_stmt() {
    const std::size_t start = i_;
    ++i_;
    auto n = make_node("For");
    expect_symbol("(");
    if (at_symbol(";")) {
      ++i_;
    } else {
      n->children.emplace_back(at_var_decl() ? var_decl() : expr_stmt());
      n->for_parts |= kForInit;
    }
    if (!at_symbol(";")) {
      n->children.emplace_back(expression());
      n->for_parts |= kForCond;
    }
    expect_symbol(";");
    if (!at_symbol(")")) {
      n->children.emplace_back(expression());
      n->for_parts |= kForUpdate;
    }
    expect_symbol(")");
    n->children.emplace_back(statement());
    return finish(std::move(n), start);
  }

  std::unique_ptr<PNode> return_stmt() {
    const std::size_t start = i_;
    ++i_;
    auto n = make_node("Return");
    if (!at_symbol(";")) n->children.emplace_back(expression());
    expect_symbol(";");
    return finish(std::move(n), start);
  }

  // ---- expressions ----

  PChild expression() {
    const std::size_t start = i_;
    PChild lhs = binary(1);
    if (!at_symbol("=")) return lhs;
    const std::string* label = label_of(lhs);
    if (!label || (*label != "Name" && *label != "FieldAccess" && *label != "Index")) {
      fail("assignable expression before \"=\"");
    }
    ++i_;
    auto n = make_node("Assign");
    n->children.push_back(std::move(lhs));
    n->children.push_back(expression());
    return finish(std::move(n), start);
  }

  static int precedence(const Token& t) {
    if (t.kind != TokenKind::Symbol) return 0;
    const std::string& s = t.lexeme;
    if (s == "||") return 1;
    if (s == "&&") return 2;
    if (s == "==" || s == "!=") return 3;
    if (s == "<" || s == "<=" || s == ">" || s == ">=") return 4;
    if (s == "+" || s == "-") return 5;
    if (s == "*" || s == "/" || s == "%") return 6;
    return 0;
  }

  PChild binary(int min_prec) {
    const std::size_t start = i_;
    PChild lhs = unary();
    while (!at_end()) {
      const int prec = precedence(toks_[i_]);
      if (prec == 0 || prec < min_prec) break;
      const std::string op = take().lexeme;
      PChild rhs = binary(prec + 1);
      auto n = make_node("BinExpr:" + op);
      n->children.push_back(std::move(lhs));
      n->children.push_back(std::move(rhs));
      lhs = finish(std::move(n), start);
    }
    return lhs;
  }

  PChild unary() {
    if (at_symbol("!") || at_symbol("-")) {
      const std::size_t start = i_;
      auto n = make_node("Unary:" + take().lexeme);
      n->children.push_back(unary());
      return finish(std::move(n), start);
    }
    return postfix();
  }

  PChild postfix() {
    const std::size_t start = i_;
    PChild e = primary();
    while (true) {
      if (at_symbol("(")) {
        ++i_;
        auto n = make_node("Call");
        n->children.push_back(std::move(e));
        if (!at_symbol(")")) {
          n->children.push_back(expression());
          while (at_symbol(",")) {
            ++i_;
            n->children.push_back(expression());
          }
        }
        expect_symbol(")");
        e = finish(std::move(n), start);
      } else if (at_symbol(".")) {
        ++i_;
        auto n = make_node("FieldAccess");
        n->children.push_back(std::move(e));
        n->children.emplace_back(expect_ident_leaf());
        e = finish(std::move(n), start);
      } else if (at_symbol("[")) {
        ++i_;
        auto n = make_node("Index");
        n->children.push_back(std::move(e));
        n->children.push_back(expression());
        expect_symbol("]");
        e = finish(std::move(n), start);
      } else {
        return e;
      }
    }
  }

  PChild primary() {
    const Token* t = peek();
    if (!t) fail("expression");
    switch (t->kind) {
      case TokenKind::Identifier: {
        const std::size_t start = i_;
        auto n = make_node("Name");
        n->children.emplace_back(expect_ident_leaf());
        return finish(std::move(n), start);
      }
      case TokenKind::IntLit:
        ++i_;
        return PLeaf{t->lexeme, LeafKind::IntLit, t->span};
      case TokenKind::BoolLit:
        ++i_;
        return PLeaf{t->lexeme, LeafKind::BoolLit, t->span};
      case TokenKind::StrLit:
        ++i_;
        return PLeaf{t->lexeme, LeafKind::StrLit, t->span};
      default:
        break;
    }
    if (at_symbol("(")) {
      ++i_;
      PChild inner = expression();
      expect_symbol(")");
      return inner;
    }
    fail("expression");
  }

  std::vector<Token> toks_;
  SourcePos eof_;
  std::size_t i_ = 0;
};

}  // namespace

class TreeBuilder {
 public:
  static SyntaxTree build(const PNode& root) {
    SyntaxTree tree;
    add(tree, root, std::nullopt, 0);
    return tree;
  }

 private:
  static NodeId add(SyntaxTree& tree, const PNode& p, std::optional<NodeId> parent, int depth) {
    const auto id = static_cast<NodeId>(tree.nodes_.size());
    tree.nodes_.push_back(AstNode{p.label, p.span, {}, parent, p.for_parts});
    tree.depth_.push_back(depth);
    for (const PChild& c : p.children) {
      ChildRef ref{};
      if (const auto* n = std::get_if<std::unique_ptr<PNode>>(&c)) {
        ref = ChildRef{false, add(tree, **n, id, depth + 1)};
      } else {
        const PLeaf& l = std::get<PLeaf>(c);
        const auto leaf_index = tree.leaves_.size();
        tree.leaves_.push_back(LeafToken{l.text, l.kind, l.span, leaf_index, id});
        ref = ChildRef{true, static_cast<std::uint32_t>(leaf_index)};
      }
      tree.nodes_[id].children.push_back(ref);
    }
    return id;
  }
};

std::string_view leaf_kind_name(LeafKind k) noexcept {
  switch (k) {
    case LeafKind::Identifier:
      return "Identifier";
    case LeafKind::IntLit:
      return "IntLit";
    case LeafKind::BoolLit:
      return "BoolLit";
    case LeafKind::StrLit:
      return "StrLit";
    case LeafKind::TypeName:
      return "TypeName";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

SyntaxTree parse(std::string_view source) {
  Lexer lexer(source);
  auto tokens = lexer.run();
  Parser parser(std::move(tokens), lexer.position());
  return TreeBuilder::build(*parser.program());
}

std::vector<LeafToken> leaves(const SyntaxTree& tree) {
  return {tree.leaves().begin(), tree.leaves().end()};
}

namespace {

class Printer {
 public:
  explicit Printer(const SyntaxTree& t) : t_(t) {}

  std::string program() {
    for (const ChildRef& c : t_.root().children) class_decl(t_.node(c.index));
    return std::move(out_);
  }

 private:
  const AstNode& node(ChildRef c) const { return t_.node(c.index); }
  const std::string& leaf(ChildRef c) const { return t_.leaves()[c.index].text; }

  void line(const std::string& s) {
    out_.append(static_cast<std::size_t>(indent_) * 2, ' ');
    out_ += s;
    out_ += '\n';
  }

  std::string type(ChildRef c) const { return leaf(node(c).children.at(0)); }

  void class_decl(const AstNode& n) {
    line("class " + leaf(n.children[0]) + " {");
    ++indent_;
    for (std::size_t k = 1; k < n.children.size(); ++k) {
      const AstNode& m = node(n.children[k]);
      if (m.label == "FieldDecl") {
        line(decl_text(m) + ";");
      } else {
        method(m);
      }
    }
    --indent_;
    line("}");
  }

  // "type name [= expr]" for FieldDecl/VarDecl.
  std::string decl_text(const AstNode& n) const {
    std::string s = type(n.children[0]) + " " + leaf(n.children[1]);
    if (n.children.size() > 2) s += " = " + expr(n.children[2]);
    return s;
  }

  void method(const AstNode& m) {
    std::string head = type(m.children[0]) + " " + leaf(m.children[1]) + "(";
    const std::size_t nparams = m.children.size() - 3;
    for (std::size_t k = 0; k < nparams; ++k) {
      const AstNode& p = node(m.children[2 + k]);
      if (k) head += ", ";
      head += type(p.children[0]) + " " + leaf(p.children[1]);
    }
    head += ") {";
    line(head);
    block_body(node(m.children.back()));
    line("}");
  }

  void block_body(const AstNode& b) {
    ++indent_;
    for (const ChildRef& c : b.children) statement(node(c));
    --indent_;
  }

  // Statement used as the body of if/while/for: blocks open on the same line.
  void nested(const std::string& head, const AstNode& body) {
    if (body.label == "Block") {
      line(head + " {");
      block_body(body);
      line("}");
    } else {
      line(head);
      ++indent_;
      statement(body);
      --indent_;
    }
  }

  std::string simple_statement(const AstNode& s) const {
    if (s.label == "VarDecl") return decl_text(s) + ";";
    if (s.label == "ExprStmt") return expr(s.children[0]) + ";";
    return {};
  }

  void statement(const AstNode& s) {
    const std::string& l = s.label;
    if (l == "Block") {
      line("{");
      block_body(s);
      line("}");
    } else if (l == "VarDecl" || l == "ExprStmt") {
      line(simple_statement(s));
    } else if (l == "Return") {
      line(s.children.empty() ? "return;" : "return " + expr(s.children[0]) + ";");
    } else if (l == "While") {
      nested("while (" + expr(s.children[0]) + ")", node(s.children[1]));
    } else if (l == "If") {
      nested("if (" + expr(s.children[0]) + ")", node(s.children[1]));
      if (s.children.size() > 2) nested("else", node(s.children[2]));
    } else if (l == "For") {
      std::size_t k = 0;
      std::string head = "for (";
      head += (s.for_parts & kForInit) ? simple_statement(node(s.children[k++])) : ";";
      if (s.for_parts & kForCond) head += " " + expr(s.children[k++]);
      head += ";";
      if (s.for_parts & kForUpdate) head += " " + expr(s.children[k++]);
      head += ")";
      nested(head, node(s.children[k]));
    }
  }

  static bool needs_parens(const AstNode& n) {
    return n.label.starts_with("BinExpr:") || n.label.starts_with("Unary:") || n.label == "Assign";
  }

  std::string operand(ChildRef c) const {
    if (!c.is_leaf && needs_parens(node(c))) return "(" + expr(c) + ")";
    return expr(c);
  }

  std::string expr(ChildRef c) const {
    if (c.is_leaf) return leaf(c);
    const AstNode& n = node(c);
    const std::string& l = n.label;
    if (l == "Name") return leaf(n.children[0]);
    if (l == "Assign") return expr(n.children[0]) + " = " + expr(n.children[1]);
    if (l.starts_with("BinExpr:")) {
      return operand(n.children[0]) + " " + l.substr(8) + " " + operand(n.children[1]);
    }
    if (l.starts_with("Unary:")) return l.substr(6) + operand(n.children[0]);
    if (l == "FieldAccess") return operand(n.children[0]) + "." + leaf(n.children[1]);
    if (l == "Index") return operand(n.children[0]) + "[" + expr(n.children[1]) + "]";
    if (l == "Call") {
      std::string s = operand(n.children[0]) + "(";
      for (std::size_t k = 1; k < n.children.size(); ++k) {
        if (k > 1) s += ", ";
        s += expr(n.children[k]);
      }
      return s + ")";
    }
    return {};
  }

  const SyntaxTree& t_;
  std::string out_;
  int indent_ = 0;
};

bool equal_nodes(const SyntaxTree& a, NodeId x, const SyntaxTree& b, NodeId y) {
  const AstNode& na = a.node(x);
  const AstNode& nb = b.node(y);
  if (na.label != nb.label || na.for_parts != nb.for_parts ||
      na.children.size() != nb.children.size()) {
    return false;
  }
  for (std::size_t k = 0; k < na.children.size(); ++k) {
    const ChildRef ca = na.children[k];
    const ChildRef cb = nb.children[k];
    if (ca.is_leaf != cb.is_leaf) return false;
    if (ca.is_leaf) {
      const LeafToken& la = a.leaves()[ca.index];
      const LeafToken& lb = b.leaves()[cb.index];
      if (la.text != lb.text || la.kind != lb.kind) return false;
    } else if (!equal_nodes(a, ca.index, b, cb.index)) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string to_source(const SyntaxTree& tree) { return Printer(tree).program(); }

bool structurally_equal(const SyntaxTree& a, const SyntaxTree& b) {
  return equal_nodes(a, SyntaxTree::kRoot, b, SyntaxTree::kRoot);
}

std::string extract(std::string_view source, const SourceSpan& span) {
  std::string out;
  SourcePos p{1, 1};
  std::size_t pos = 0;
  while (pos < source.size()) {
    std::size_t len = source[pos] == '\n' ? 1 : utf8_length(source, pos);
    if (len == 0) len = 1;
    if (span.contains(p)) out.append(source.substr(pos, len));
    if (source[pos] == '\n') {
      ++p.line;
      p.col = 1;
    } else {
      ++p.col;
    }
    pos += len;
    if (span.end() < p) break;
  }
  return out;
}

}  // namespace eye2vec::minilang
