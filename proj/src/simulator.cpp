#include "eye2vec/simulator.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "eye2vec/error.hpp"
#include "eye2vec/hash.hpp"

namespace eye2vec {

using minilang::LeafKind;
using minilang::LeafToken;
using minilang::SyntaxTree;

std::string_view strategy_name(ReadingStrategy s) noexcept {
  return s == ReadingStrategy::Linear ? "linear" : "defuse";
}

std::optional<ReadingStrategy> parse_strategy(std::string_view name) noexcept {
  if (name == "linear") return ReadingStrategy::Linear;
  if (name == "defuse") return ReadingStrategy::Defuse;
  return std::nullopt;
}

namespace {

class FixationWriter {
 public:
  FixationWriter(GridRecording& rec, int jitter, SplitMix64& rng)
      : rec_(rec), jitter_(jitter), rng_(rng) {}

  void at(const LeafToken& leaf) {
    int col = (leaf.span.start_col + leaf.span.end_col) / 2;
    if (jitter_ > 0) {
      const auto width = static_cast<std::uint64_t>(2 * jitter_ + 1);
      col += static_cast<int>(rng_.next_below(width)) - jitter_;
    }
    const auto t = static_cast<std::int64_t>(rec_.fixations.size()) * kSimStepMs;
    rec_.fixations.push_back(
        GridFixation{t, kSimDurationMs, GridPos{leaf.span.start_line, std::max(col, 1)}});
  }

 private:
  GridRecording& rec_;
  int jitter_;
  SplitMix64& rng_;
};

bool is_declaration_site(const SyntaxTree& tree, const LeafToken& leaf) {
  const std::string& parent = tree.node(leaf.parent).label;
  return leaf.kind == LeafKind::Identifier &&
         (parent == "VarDecl" || parent == "Param" || parent == "FieldDecl");
}

// Occurrence lists (leaf indices, ascending) of identifiers whose first
// occurrence is a declaration site and that occur again later, ordered by
// first occurrence.
std::vector<std::vector<std::size_t>> declared_and_used(const SyntaxTree& tree) {
  std::map<std::string, std::vector<std::size_t>> occurrences;
  for (const LeafToken& l : tree.leaves()) {
    if (l.kind == LeafKind::Identifier) occurrences[l.text].push_back(l.leaf_index);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [text, occ] : occurrences) {
    if (occ.size() >= 2 && is_declaration_site(tree, tree.leaves()[occ.front()])) {
      out.push_back(std::move(occ));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace

GridRecording simulate(const SyntaxTree& tree, const Strategy& strategy, std::size_t n_fixations,
                       std::string recording_id) {
  if (n_fixations < 2) throw std::invalid_argument("simulation needs at least 2 fixations");
  if (tree.leaves().size() < 2) throw std::invalid_argument("simulation needs at least 2 leaves");
  if (strategy.jitter_cols < 0) throw std::invalid_argument("jitter must be non-negative");

  GridRecording rec;
  rec.recording_id = std::move(recording_id);
  rec.fixations.reserve(n_fixations);
  SplitMix64 rng(strategy.seed);
  FixationWriter emit(rec, strategy.jitter_cols, rng);
  const auto leaves = tree.leaves();

  if (strategy.name == ReadingStrategy::Linear) {
    for (std::size_t i = 0; i < n_fixations; ++i) emit.at(leaves[i % leaves.size()]);
    return rec;
  }

  auto idents = declared_and_used(tree);
  if (idents.empty()) {
    throw NoIdentifiersError("no declared identifier is used again; defuse reading is undefined");
  }
  for (std::size_t i = idents.size(); i > 1; --i) {
    std::swap(idents[i - 1], idents[rng.next_below(i)]);
  }
  for (std::size_t k = 0; rec.fixations.size() < n_fixations; ++k) {
    const auto& occ = idents[k % idents.size()];
    emit.at(leaves[occ.front()]);
    if (rec.fixations.size() == n_fixations) break;
    emit.at(leaves[occ[1 + rng.next_below(occ.size() - 1)]]);
  }
  return rec;
}

}  // namespace eye2vec
