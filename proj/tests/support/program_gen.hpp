#pragma once

// Random mini-language programs for property tests. Generates source text
// (with random whitespace, tabs and comments between tokens) and keeps only
// programs whose leaf count fits the requested budget.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eye2vec/minilang.hpp"

namespace eye2vec::testing {

class ProgramGenerator {
 public:
  explicit ProgramGenerator(std::uint64_t seed) : rng_(seed) {}

  // A parseable program with between 1 and max_leaves leaves.
  std::string program(std::size_t max_leaves) {
    while (true) {
      out_.clear();
      emit_program();
      const auto tree = minilang::parse(out_);
      const auto n = tree.leaves().size();
      if (n >= 1 && n <= max_leaves) return out_;
    }
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool chance(int percent) { return static_cast<int>(rng_() % 100) < percent; }

  void sep() {
    switch (pick(9)) {
      case 0:
        out_ += "\n  ";
        break;
      case 1:
        out_ += "\t";
        break;
      case 2:
        out_ += " /* c,d */ ";
        break;
      case 3:
        out_ += " // note\n";
        break;
      default:
        out_ += ' ';
    }
  }

  void tok(const std::string& s) {
    out_ += s;
    sep();
  }

  std::string ident() {
    static const std::vector<std::string> pool = {"a", "b", "x", "count", "i", "total", "node"};
    return pool[pick(pool.size())];
  }

  std::string type() {
    static const std::vector<std::string> pool = {"int", "boolean", "Item", "int"};
    return pool[pick(pool.size())];
  }

  void emit_program() {
    const std::size_t classes = 1 + pick(2);
    for (std::size_t c = 0; c < classes; ++c) {
      tok("class");
      tok(c == 0 ? "Alpha" : "Beta");
      tok("{");
      const std::size_t members = pick(3);
      for (std::size_t m = 0; m < members; ++m) member();
      tok("}");
    }
  }

  void member() {
    if (chance(40)) {
      tok(type());
      tok(ident());
      if (chance(50)) {
        tok("=");
        expr(2);
      }
      tok(";");
      return;
    }
    tok(chance(20) ? "void" : type());
    tok(ident());
    tok("(");
    const std::size_t params = pick(3);
    for (std::size_t p = 0; p < params; ++p) {
      if (p) tok(",");
      tok(type());
      tok(ident());
    }
    tok(")");
    block(2);
  }

  void block(int depth) {
    tok("{");
    const std::size_t n = pick(3);
    for (std::size_t s = 0; s < n; ++s) statement(depth);
    tok("}");
  }

  void statement(int depth) {
    const std::size_t kind = depth > 0 ? pick(8) : pick(3);
    switch (kind) {
      case 0:
        tok(type());
        tok(ident());
        if (chance(60)) {
          tok("=");
          expr(2);
        }
        tok(";");
        break;
      case 1:
        tok(ident());
        tok("=");
        expr(2);
        tok(";");
        break;
      case 2:
        tok("return");
        if (chance(70)) expr(2);
        tok(";");
        break;
      case 3:
        tok("if");
        tok("(");
        expr(2);
        tok(")");
        statement(depth - 1);
        if (chance(50)) {
          tok("else");
          statement(depth - 1);
        }
        break;
      case 4:
        tok("while");
        tok("(");
        expr(1);
        tok(")");
        statement(depth - 1);
        break;
      case 5:
        tok("for");
        tok("(");
        if (chance(50)) {
          tok("int");
          tok("i");
          tok("=");
          tok("0");
          tok(";");
        } else if (chance(50)) {
          tok("i");
          tok("=");
          tok("1");
          tok(";");
        } else {
          tok(";");
        }
        if (chance(70)) expr(1);
        tok(";");
        if (chance(50)) {
          tok("i");
          tok("=");
          expr(1);
        }
        tok(")");
        statement(depth - 1);
        break;
      case 6:
        block(depth - 1);
        break;
      default:
        expr(2);
        tok(";");
        break;
    }
  }

  void expr(int depth) {
    if (depth <= 0) {
      primary();
      return;
    }
    static const std::vector<std::string> ops = {"+", "-",  "*",  "/",  "%",  "<",  "<=",
                                                 ">", ">=", "==", "!=", "&&", "||"};
    switch (pick(7)) {
      case 0:
      case 1:
        expr(depth - 1);
        tok(ops[pick(ops.size())]);
        expr(depth - 1);
        break;
      case 2:
        tok(chance(50) ? "!" : "-");
        expr(depth - 1);
        break;
      case 3:
        tok(ident());
        tok("(");
        if (chance(60)) {
          expr(depth - 1);
          if (chance(40)) {
            tok(",");
            expr(depth - 1);
          }
        }
        tok(")");
        break;
      case 4:
        tok(ident());
        if (chance(50)) {
          tok(".");
          tok(ident());
        } else {
          tok("[");
          expr(depth - 1);
          tok("]");
        }
        break;
      case 5:
        tok("(");
        expr(depth - 1);
        tok(")");
        break;
      default:
        primary();
    }
  }

  void primary() {
    switch (pick(6)) {
      case 0:
        tok(std::to_string(pick(1000)));
        break;
      case 1:
        tok(chance(50) ? "true" : "false");
        break;
      case 2:
        tok(chance(50) ? "\"hi, there\"" : "\"q\\\"é\"");
        break;
      default:
        tok(ident());
    }
  }

  std::mt19937_64 rng_;
  std::string out_;
};

}  // namespace eye2vec::testing
