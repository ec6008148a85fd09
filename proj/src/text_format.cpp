#include "eye2vec/text_format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace eye2vec {

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  std::string s(buf.data(), end);
  if (std::isfinite(value) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace {

template <class T>
std::optional<T> parse_whole(std::string_view field) {
  if (field.empty() || field.front() == '+') return std::nullopt;
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<std::int64_t> parse_int(std::string_view field) {
  return parse_whole<std::int64_t>(field);
}

std::optional<std::uint64_t> parse_uint(std::string_view field) {
  if (!field.empty() && field.front() == '-') return std::nullopt;
  return parse_whole<std::uint64_t>(field);
}

std::optional<double> parse_real(std::string_view field) { return parse_whole<double>(field); }

}  // namespace eye2vec
