#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eye2vec {

// Base of every error the library raises. The CLI maps any Error to exit
// code 1 (input/format problem); usage problems never reach this type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LexError : public Error {
 public:
  LexError(int line, int col, const std::string& message);
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }

 private:
  int line_;
  int col_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int col, std::string expected, std::string found);
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  int line_;
  int col_;
  std::string expected_;
  std::string found_;
};

// Malformed input file. `row` is the 1-based physical line (header = 1).
class FormatError : public Error {
 public:
  enum class Kind {
    BadHeader,
    BadArity,
    BadNumber,
    NonFinite,
    OutOfRange,
    DecreasingTimestamp,
    DuplicateKey,
    BadKey,
    BadDocument,
  };
  FormatError(Kind kind, std::size_t row, const std::string& message);
  Kind kind() const noexcept { return kind_; }
  std::size_t row() const noexcept { return row_; }

 private:
  Kind kind_;
  std::size_t row_;
};

class NotALeafError : public Error {
 public:
  using Error::Error;
};
class SameLeafError : public Error {
 public:
  using Error::Error;
};
class OutOfViewportError : public Error {
 public:
  using Error::Error;
};
class DegenerateVectorError : public Error {
 public:
  using Error::Error;
};
class EmptyProfileError : public Error {
 public:
  using Error::Error;
};
class ZeroVectorError : public Error {
 public:
  using Error::Error;
};
class DimMismatchError : public Error {
 public:
  using Error::Error;
};
class InvalidKError : public Error {
 public:
  using Error::Error;
};
class EmptyClassError : public Error {
 public:
  using Error::Error;
};
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};
class NoIdentifiersError : public Error {
 public:
  using Error::Error;
};

}  // namespace eye2vec
