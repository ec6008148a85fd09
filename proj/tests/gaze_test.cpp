#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "eye2vec/error.hpp"
#include "eye2vec/gaze.hpp"

namespace eye2vec {
namespace {

FormatError::Kind grid_error_kind(const std::string& text, std::size_t* row = nullptr) {
  std::istringstream in(text);
  try {
    read_grid_fixations(in, "r");
  } catch (const FormatError& e) {
    if (row) *row = e.row();
    return e.kind();
  }
  ADD_FAILURE() << "no FormatError for:\n" << text;
  return FormatError::Kind::BadDocument;
}

TEST(ReadFixations, HeaderOnly) {
  std::istringstream in("timestamp_ms,line,col,duration_ms\n");
  const auto rec = read_grid_fixations(in, "empty");
  EXPECT_EQ(rec.recording_id, "empty");
  EXPECT_TRUE(rec.fixations.empty());
}

TEST(ReadFixations, GridRow) {
  std::istringstream in("timestamp_ms,line,col,duration_ms\n1000,3,7,220\n");
  const auto rec = read_grid_fixations(in, "g");
  ASSERT_EQ(rec.fixations.size(), 1u);
  EXPECT_EQ(rec.fixations[0], (GridFixation{1000, 220, GridPos{3, 7}}));
}

TEST(ReadFixations, DecreasingTimestampReportsRow) {
  std::istringstream in("timestamp_ms,x_px,y_px,duration_ms\n500,1.5,2,100\n400,3,4,100\n");
  try {
    read_pixel_fixations(in, "p");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.kind(), FormatError::Kind::DecreasingTimestamp);
    EXPECT_EQ(e.row(), 3u);
  }
}

TEST(ReadFixations, EqualTimestampsAllowed) {
  std::istringstream in("timestamp_ms,line,col,duration_ms\n5,1,1,1\n5,1,2,1\n");
  EXPECT_EQ(read_grid_fixations(in, "r").fixations.size(), 2u);
}

TEST(ReadFixations, CrlfAndBlankLines) {
  std::istringstream in("timestamp_ms,line,col,duration_ms\r\n\r\n10,2,3,40\r\n\n");
  const auto rec = read_grid_fixations(in, "r");
  ASSERT_EQ(rec.fixations.size(), 1u);
  EXPECT_EQ(rec.fixations[0].position, (GridPos{2, 3}));
}

TEST(ReadFixations, Malformations) {
  using K = FormatError::Kind;
  const std::string h = "timestamp_ms,line,col,duration_ms\n";
  std::size_t row = 0;
  EXPECT_EQ(grid_error_kind("timestamp_ms,x_px,y_px,duration_ms\n", &row), K::BadHeader);
  EXPECT_EQ(row, 1u);
  EXPECT_EQ(grid_error_kind(""), K::BadHeader);
  EXPECT_EQ(grid_error_kind(h + "1,2,3\n", &row), K::BadArity);
  EXPECT_EQ(row, 2u);
  EXPECT_EQ(grid_error_kind(h + "1,2,3,4,5\n"), K::BadArity);
  EXPECT_EQ(grid_error_kind(h + "1,two,3,4\n"), K::BadNumber);
  EXPECT_EQ(grid_error_kind(h + "1,2.5,3,4\n"), K::BadNumber);
  EXPECT_EQ(grid_error_kind(h + "+1,2,3,4\n"), K::BadNumber);
  EXPECT_EQ(grid_error_kind(h + "1, 2,3,4\n"), K::BadNumber);
  EXPECT_EQ(grid_error_kind(h + "-1,2,3,4\n"), K::OutOfRange);
  EXPECT_EQ(grid_error_kind(h + "1,0,3,4\n"), K::OutOfRange);
  EXPECT_EQ(grid_error_kind(h + "1,2,3,0\n"), K::OutOfRange);
  EXPECT_EQ(grid_error_kind(h + "1,2,3,4\n\n0,2,3,4\n", &row), K::DecreasingTimestamp);
  EXPECT_EQ(row, 4u);

  std::istringstream nan_in("timestamp_ms,x_px,y_px,duration_ms\n1,nan,2,3\n");
  EXPECT_THROW(read_pixel_fixations(nan_in, "p"), FormatError);
  std::istringstream neg_in("timestamp_ms,x_px,y_px,duration_ms\n1,-0.5,2,3\n");
  EXPECT_THROW(read_pixel_fixations(neg_in, "p"), FormatError);
}

TEST(ReadFixations, MissingFile) {
  EXPECT_THROW(read_grid_fixations(std::filesystem::path("/nonexistent/x.csv")), Error);
}

TEST(WriteFixations, PixelRoundTripIsLossless) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> px(0.0, 4000.0);
  PixelRecording rec{"p", {}, std::nullopt};
  std::int64_t t = 0;
  for (int i = 0; i < 500; ++i) {
    t += static_cast<std::int64_t>(rng() % 300);
    rec.fixations.push_back({t, 1 + static_cast<std::int64_t>(rng() % 900), {px(rng), px(rng)}});
  }
  rec.fixations.push_back({t, 5, {0.1, 1e-300}});
  std::ostringstream out;
  write_fixations(out, rec);
  std::istringstream in(out.str());
  EXPECT_EQ(read_pixel_fixations(in, "p"), rec);
}

TEST(WriteFixations, GridRoundTrip) {
  const GridRecording rec{"g", {{0, 1, {1, 1}}, {250, 200, {12, 40}}}, std::nullopt};
  std::ostringstream out;
  write_fixations(out, rec);
  EXPECT_EQ(out.str(), "timestamp_ms,line,col,duration_ms\n0,1,1,1\n250,12,40,200\n");
  std::istringstream in(out.str());
  EXPECT_EQ(read_grid_fixations(in, "g"), rec);
}

TEST(ToGrid, Examples) {
  const auto g1 = FontGrid::make(0, 0, 10, 20);
  EXPECT_EQ(to_grid(PixelFixation{0, 1, {25, 45}}, g1).position, (GridPos{3, 3}));

  const auto g2 = FontGrid::make(100, 50, 8, 16);
  const auto f = to_grid(PixelFixation{7, 9, {148, 98}}, g2);
  EXPECT_EQ(f.position, (GridPos{4, 7}));
  EXPECT_EQ(f.timestamp_ms, 7);
  EXPECT_EQ(f.duration_ms, 9);

  EXPECT_THROW(to_grid(PixelFixation{0, 1, {99, 60}}, g2), OutOfViewportError);
  EXPECT_THROW(to_grid(PixelFixation{0, 1, {120, 49.5}}, g2), OutOfViewportError);
  EXPECT_EQ(to_grid(PixelFixation{0, 1, {100, 50}}, g2).position, (GridPos{1, 1}));
}

TEST(ToGrid, CellCenterRoundTrip) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    const auto grid = FontGrid::make(static_cast<double>(rng() % 500), static_cast<double>(rng() % 500),
                                     4.0 + static_cast<double>(rng() % 200) / 10.0,
                                     8.0 + static_cast<double>(rng() % 300) / 10.0);
    const GridPos cell{1 + static_cast<int>(rng() % 200), 1 + static_cast<int>(rng() % 200)};
    EXPECT_EQ(to_grid(PixelFixation{0, 1, cell_center(cell, grid)}, grid).position, cell);
  }
}

TEST(FontGrid, RejectsBadCalibration) {
  EXPECT_THROW(FontGrid::make(0, 0, 0, 10), std::invalid_argument);
  EXPECT_THROW(FontGrid::make(0, 0, 5, -1), std::invalid_argument);
  EXPECT_THROW(FontGrid::make(std::numeric_limits<double>::infinity(), 0, 5, 5),
               std::invalid_argument);
}

}  // namespace
}  // namespace eye2vec
