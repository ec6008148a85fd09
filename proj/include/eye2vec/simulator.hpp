#pragma once

// Synthetic fixation recordings over a parsed program, used as ground truth
// for end-to-end tests.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "eye2vec/gaze.hpp"
#include "eye2vec/minilang.hpp"

namespace eye2vec {

enum class ReadingStrategy {
  Linear,  // leaves in source order, wrapping around
  Defuse,  // declaration site, then a later use of the same identifier
};

std::string_view strategy_name(ReadingStrategy s) noexcept;
std::optional<ReadingStrategy> parse_strategy(std::string_view name) noexcept;

struct Strategy {
  ReadingStrategy name = ReadingStrategy::Linear;
  int jitter_cols = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::int64_t kSimStepMs = 250;
inline constexpr std::int64_t kSimDurationMs = 200;

// Fixations at leaf span midpoints with a seeded column jitter in
// [-jitter, +jitter] (columns never go below 1). Throws
// std::invalid_argument for n_fixations < 2, fewer than two leaves, or a
// negative jitter; NoIdentifiersError for Defuse when no declared
// identifier is used again.
GridRecording simulate(const minilang::SyntaxTree& tree, const Strategy& strategy,
                       std::size_t n_fixations, std::string recording_id = "sim");

}  // namespace eye2vec
