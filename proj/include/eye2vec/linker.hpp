#pragma once

// Syntax tree / eye linker: maps grid fixations onto AST leaves and counts
// the path contexts traversed by consecutive fixations.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eye2vec/gaze.hpp"
#include "eye2vec/minilang.hpp"
#include "eye2vec/path_context.hpp"

namespace eye2vec {

enum class MappingKind { Hit, Snapped, Dropped };

struct MappedFixation {
  GridFixation fixation;
  std::optional<std::size_t> leaf_index;  // set iff kind != Dropped
  MappingKind kind = MappingKind::Dropped;
  int snap_distance_cols = 0;             // Snapped only
  std::string drop_reason;                // Dropped only
};

// Per-line lookup over a tree's leaves.
class LeafLocator {
 public:
  explicit LeafLocator(const minilang::SyntaxTree& tree);

  // Hit when (line, col) is inside a leaf span; otherwise the nearest leaf on
  // the same line within `snap_tol_cols` columns (ties go to the smaller
  // start column); otherwise Dropped("no-leaf").
  MappedFixation map(const GridFixation& f, int snap_tol_cols) const;

 private:
  const minilang::SyntaxTree* tree_;
  std::map<int, std::vector<std::size_t>> by_line_;
};

MappedFixation map_fixation(const GridFixation& f, const minilang::SyntaxTree& tree,
                            int snap_tol_cols);

enum class SelfTransitions { Drop, Keep };
enum class ChainMode { Skip, Strict };

struct LinkOptions {
  int snap_tol_cols = 3;
  SelfTransitions self_transitions = SelfTransitions::Drop;
  ChainMode chain = ChainMode::Skip;
};

struct ProfileEntry {
  PathContext context;
  std::uint64_t count = 0;
  double ratio = 0.0;
};

// Entries are kept sorted by context string ascending; each ratio is
// count / total_transitions.
struct TransitionProfile {
  std::string recording_id;
  std::vector<ProfileEntry> entries;
  std::uint64_t total_transitions = 0;

  bool empty() const noexcept { return total_transitions == 0; }
};

// Canonical profile from raw counts (zero counts are skipped).
TransitionProfile make_profile(std::string recording_id,
                               const std::map<std::string, std::uint64_t>& counts);

// Throws std::invalid_argument if any fixation-derived option is invalid
// (negative snap tolerance). An empty result is a normal return; check
// TransitionProfile::empty().
TransitionProfile build_profile(const GridRecording& recording, const minilang::SyntaxTree& tree,
                                const LinkOptions& options = {});

// Every fixation of the recording, mapped.
std::vector<MappedFixation> map_recording(const GridRecording& recording,
                                          const minilang::SyntaxTree& tree, int snap_tol_cols);

// Transition multiset union: counts add per context.
TransitionProfile merge_profiles(const TransitionProfile& a, const TransitionProfile& b,
                                 std::string recording_id);

// {"recording_id", "total_transitions", "entries": [{"context", "hash",
// "count", "ratio"}]} with entries by descending count, then context.
void write_profile_json(std::ostream& out, const TransitionProfile& profile);
std::string profile_json(const TransitionProfile& profile);
// Throws FormatError on schema violations or a hash that does not match its
// context string.
TransitionProfile read_profile_json(std::istream& in);

}  // namespace eye2vec
