#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace eye2vec {

// Shortest decimal string that parses back to exactly `value`. Integral
// values keep a trailing ".0" so they still read as reals ("1.0", not "1").
std::string format_real(double value);

// Strict parsers: the whole field must be consumed; no leading '+' or
// whitespace. Return nullopt on any syntax or range problem.
std::optional<std::int64_t> parse_int(std::string_view field);
std::optional<std::uint64_t> parse_uint(std::string_view field);
std::optional<double> parse_real(std::string_view field);

}  // namespace eye2vec
