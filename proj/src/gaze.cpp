#include "eye2vec/gaze.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "eye2vec/error.hpp"
#include "eye2vec/text_format.hpp"

namespace eye2vec {

FontGrid FontGrid::make(double origin_x, double origin_y, double char_width, double line_height) {
  if (!std::isfinite(origin_x) || !std::isfinite(origin_y) || !std::isfinite(char_width) ||
      !std::isfinite(line_height)) {
    throw std::invalid_argument("font grid parameters must be finite");
  }
  if (char_width <= 0.0 || line_height <= 0.0) {
    throw std::invalid_argument("char width and line height must be positive");
  }
  return FontGrid{origin_x, origin_y, char_width, line_height};
}

namespace {

using Kind = FormatError::Kind;

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view chomp(const std::string& line) {
  std::string_view v{line};
  if (v.ends_with('\r')) v.remove_suffix(1);
  return v;
}

std::int64_t int_field(std::string_view field, std::size_t row, std::string_view name,
                       std::int64_t min) {
  const auto v = parse_int(field);
  if (!v) {
    throw FormatError(Kind::BadNumber, row, fmt::format("{} is not an integer: \"{}\"", name, field));
  }
  if (*v < min) {
    throw FormatError(Kind::OutOfRange, row, fmt::format("{} must be >= {}, got {}", name, min, *v));
  }
  return *v;
}

double real_field(std::string_view field, std::size_t row, std::string_view name) {
  const auto v = parse_real(field);
  if (!v) {
    throw FormatError(Kind::BadNumber, row, fmt::format("{} is not a number: \"{}\"", name, field));
  }
  if (!std::isfinite(*v)) {
    throw FormatError(Kind::NonFinite, row, fmt::format("{} is not finite", name));
  }
  if (*v < 0.0) {
    throw FormatError(Kind::OutOfRange, row, fmt::format("{} must be non-negative", name));
  }
  return *v;
}

int grid_field(std::string_view field, std::size_t row, std::string_view name) {
  const std::int64_t v = int_field(field, row, name, 1);
  if (v > std::numeric_limits<int>::max()) {
    throw FormatError(Kind::OutOfRange, row, fmt::format("{} too large", name));
  }
  return static_cast<int>(v);
}

template <class Position, class ParsePosition>
BasicRecording<Position> read_csv(std::istream& in, std::string recording_id,
                                  std::string_view header, ParsePosition parse_position) {
  BasicRecording<Position> rec;
  rec.recording_id = std::move(recording_id);
  std::string line;
  if (!std::getline(in, line) || chomp(line) != header) {
    throw FormatError(Kind::BadHeader, 1, fmt::format("expected header \"{}\"", header));
  }
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view body = chomp(line);
    if (body.empty()) continue;
    const auto fields = split_fields(body);
    if (fields.size() != 4) {
      throw FormatError(Kind::BadArity, row, fmt::format("expected 4 fields, got {}", fields.size()));
    }
    BasicFixation<Position> f;
    f.timestamp_ms = int_field(fields[0], row, "timestamp_ms", 0);
    f.position = parse_position(fields[1], fields[2], row);
    f.duration_ms = int_field(fields[3], row, "duration_ms", 1);
    if (!rec.fixations.empty() && f.timestamp_ms < rec.fixations.back().timestamp_ms) {
      throw FormatError(Kind::DecreasingTimestamp, row,
                        fmt::format("timestamp {} is before the previous {}", f.timestamp_ms,
                                    rec.fixations.back().timestamp_ms));
    }
    rec.fixations.push_back(f);
  }
  return rec;
}

std::ifstream open_or_throw(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(fmt::format("cannot open {}", file.string()));
  return in;
}

}  // namespace

PixelRecording read_pixel_fixations(std::istream& in, std::string recording_id) {
  return read_csv<PixelPos>(in, std::move(recording_id), kPixelHeader,
                            [](std::string_view x, std::string_view y, std::size_t row) {
                              return PixelPos{real_field(x, row, "x_px"), real_field(y, row, "y_px")};
                            });
}

GridRecording read_grid_fixations(std::istream& in, std::string recording_id) {
  return read_csv<GridPos>(in, std::move(recording_id), kGridHeader,
                           [](std::string_view l, std::string_view c, std::size_t row) {
                             return GridPos{grid_field(l, row, "line"), grid_field(c, row, "col")};
                           });
}

std::variant<PixelRecording, GridRecording> read_fixations(const std::filesystem::path& file,
                                                           FixationMode mode) {
  if (mode == FixationMode::Pixel) return read_pixel_fixations(file);
  return read_grid_fixations(file);
}

GridRecording read_grid_fixations(const std::filesystem::path& file) {
  auto in = open_or_throw(file);
  return read_grid_fixations(in, file.stem().string());
}

PixelRecording read_pixel_fixations(const std::filesystem::path& file) {
  auto in = open_or_throw(file);
  return read_pixel_fixations(in, file.stem().string());
}

void write_fixations(std::ostream& out, const PixelRecording& rec) {
  out << kPixelHeader << '\n';
  for (const auto& f : rec.fixations) {
    out << f.timestamp_ms << ',' << format_real(f.position.x_px) << ','
        << format_real(f.position.y_px) << ',' << f.duration_ms << '\n';
  }
}

void write_fixations(std::ostream& out, const GridRecording& rec) {
  out << kGridHeader << '\n';
  for (const auto& f : rec.fixations) {
    out << f.timestamp_ms << ',' << f.position.line << ',' << f.position.col << ','
        << f.duration_ms << '\n';
  }
}

GridFixation to_grid(const PixelFixation& f, const FontGrid& grid) {
  const double dx = f.position.x_px - grid.origin_x_px;
  const double dy = f.position.y_px - grid.origin_y_px;
  if (!(dx >= 0.0) || !(dy >= 0.0)) {
    throw OutOfViewportError(fmt::format("pixel ({}, {}) lies above or left of the code pane",
                                         f.position.x_px, f.position.y_px));
  }
  const double line = std::floor(dy / grid.line_height_px) + 1.0;
  const double col = std::floor(dx / grid.char_width_px) + 1.0;
  constexpr double kMax = std::numeric_limits<int>::max();
  if (line > kMax || col > kMax) {
    throw OutOfViewportError(fmt::format("pixel ({}, {}) is beyond the addressable grid",
                                         f.position.x_px, f.position.y_px));
  }
  return GridFixation{f.timestamp_ms, f.duration_ms,
                      GridPos{static_cast<int>(line), static_cast<int>(col)}};
}

GridRecording to_grid(const PixelRecording& rec, const FontGrid& grid) {
  GridRecording out{rec.recording_id, {}, rec.label};
  out.fixations.reserve(rec.fixations.size());
  for (const auto& f : rec.fixations) out.fixations.push_back(to_grid(f, grid));
  return out;
}

PixelPos cell_center(GridPos cell, const FontGrid& grid) noexcept {
  return PixelPos{grid.origin_x_px + (cell.col - 0.5) * grid.char_width_px,
                  grid.origin_y_px + (cell.line - 0.5) * grid.line_height_px};
}

}  // namespace eye2vec
