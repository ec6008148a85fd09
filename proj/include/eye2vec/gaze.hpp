#pragma once

// Fixation logs and the pixel-to-grid coordinate converter.
//
// Pixel and grid fixations are distinct types, so a grid fixation can never
// be passed through the converter a second time.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eye2vec {

struct PixelPos {
  double x_px = 0.0;
  double y_px = 0.0;
  friend bool operator==(const PixelPos&, const PixelPos&) = default;
};

// 1-based line and column of a character cell.
struct GridPos {
  int line = 1;
  int col = 1;
  friend bool operator==(const GridPos&, const GridPos&) = default;
};

template <class Position>
struct BasicFixation {
  std::int64_t timestamp_ms = 0;
  std::int64_t duration_ms = 1;
  Position position;
  friend bool operator==(const BasicFixation&, const BasicFixation&) = default;
};

using PixelFixation = BasicFixation<PixelPos>;
using GridFixation = BasicFixation<GridPos>;

template <class Position>
struct BasicRecording {
  std::string recording_id;
  std::vector<BasicFixation<Position>> fixations;
  std::optional<std::string> label;
  friend bool operator==(const BasicRecording&, const BasicRecording&) = default;
};

using PixelRecording = BasicRecording<PixelPos>;
using GridRecording = BasicRecording<GridPos>;

// Monospace code pane calibration: top-left of the first cell and the cell
// size in pixels.
struct FontGrid {
  double origin_x_px = 0.0;
  double origin_y_px = 0.0;
  double char_width_px = 1.0;
  double line_height_px = 1.0;

  // Throws std::invalid_argument unless both cell sizes are positive and
  // every value is finite.
  static FontGrid make(double origin_x, double origin_y, double char_width, double line_height);
};

enum class FixationMode { Pixel, Grid };

inline constexpr std::string_view kPixelHeader = "timestamp_ms,x_px,y_px,duration_ms";
inline constexpr std::string_view kGridHeader = "timestamp_ms,line,col,duration_ms";

// CSV readers. Throw FormatError on a wrong header, a non-numeric field, a
// negative (or zero duration / zero line/col) value, or a decreasing
// timestamp. Rows are numbered from 1 at the header.
PixelRecording read_pixel_fixations(std::istream& in, std::string recording_id);
GridRecording read_grid_fixations(std::istream& in, std::string recording_id);

// Reads a file; the recording id is the file stem. Throws Error if the file
// cannot be opened.
std::variant<PixelRecording, GridRecording> read_fixations(const std::filesystem::path& file,
                                                           FixationMode mode);
GridRecording read_grid_fixations(const std::filesystem::path& file);
PixelRecording read_pixel_fixations(const std::filesystem::path& file);

void write_fixations(std::ostream& out, const PixelRecording& rec);
void write_fixations(std::ostream& out, const GridRecording& rec);

// Cell containing a pixel. Throws OutOfViewportError above or left of the
// pane origin.
GridFixation to_grid(const PixelFixation& f, const FontGrid& grid);
GridRecording to_grid(const PixelRecording& rec, const FontGrid& grid);

// Center pixel of a cell.
PixelPos cell_center(GridPos cell, const FontGrid& grid) noexcept;

}  // namespace eye2vec
