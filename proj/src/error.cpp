#include "eye2vec/error.hpp"

#include <fmt/format.h>

#include <utility>

namespace eye2vec {

LexError::LexError(int line, int col, const std::string& message)
    : Error(fmt::format("{}:{}: lex error: {}", line, col, message)), line_(line), col_(col) {}

ParseError::ParseError(int line, int col, std::string expected, std::string found)
    : Error(fmt::format("{}:{}: parse error: expected {}, found {}", line, col, expected, found)),
      line_(line),
      col_(col),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

FormatError::FormatError(Kind kind, std::size_t row, const std::string& message)
    : Error(fmt::format("row {}: {}", row, message)), kind_(kind), row_(row) {}

}  // namespace eye2vec
