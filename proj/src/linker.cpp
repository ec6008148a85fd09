#include "eye2vec/linker.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "eye2vec/error.hpp"
#include "eye2vec/text_format.hpp"

namespace eye2vec {

using minilang::LeafToken;
using minilang::SyntaxTree;

LeafLocator::LeafLocator(const SyntaxTree& tree) : tree_(&tree) {
  for (const LeafToken& l : tree.leaves()) {
    for (int line = l.span.start_line; line <= l.span.end_line; ++line) {
      by_line_[line].push_back(l.leaf_index);
    }
  }
}

MappedFixation LeafLocator::map(const GridFixation& f, int snap_tol_cols) const {
  MappedFixation m{f, std::nullopt, MappingKind::Dropped, 0, "no-leaf"};
  const auto it = by_line_.find(f.position.line);
  if (it == by_line_.end()) return m;
  const minilang::SourcePos p{f.position.line, f.position.col};
  std::optional<std::size_t> best;
  int best_distance = 0;
  for (std::size_t idx : it->second) {
    const auto& span = tree_->leaves()[idx].span;
    if (span.contains(p)) {
      m.leaf_index = idx;
      m.kind = MappingKind::Hit;
      m.drop_reason.clear();
      return m;
    }
    if (span.start_line != span.end_line) continue;
    const int d = p.col < span.start_col ? span.start_col - p.col : p.col - span.end_col;
    // Leaves on a line are in start-column order, so strict < keeps the
    // leftmost among equally distant candidates.
    if (d <= snap_tol_cols && (!best || d < best_distance)) {
      best = idx;
      best_distance = d;
    }
  }
  if (best) {
    m.leaf_index = best;
    m.kind = MappingKind::Snapped;
    m.snap_distance_cols = best_distance;
    m.drop_reason.clear();
  }
  return m;
}

MappedFixation map_fixation(const GridFixation& f, const SyntaxTree& tree, int snap_tol_cols) {
  return LeafLocator(tree).map(f, snap_tol_cols);
}

TransitionProfile make_profile(std::string recording_id,
                               const std::map<std::string, std::uint64_t>& counts) {
  TransitionProfile p;
  p.recording_id = std::move(recording_id);
  for (const auto& [ctx, count] : counts) p.total_transitions += count;
  for (const auto& [ctx, count] : counts) {
    if (count == 0) continue;
    p.entries.push_back(ProfileEntry{parse_context_string(ctx), count,
                                     static_cast<double>(count) /
                                         static_cast<double>(p.total_transitions)});
  }
  return p;
}

std::vector<MappedFixation> map_recording(const GridRecording& recording, const SyntaxTree& tree,
                                          int snap_tol_cols) {
  if (snap_tol_cols < 0) throw std::invalid_argument("snap tolerance must be non-negative");
  const LeafLocator locator(tree);
  std::vector<MappedFixation> out;
  out.reserve(recording.fixations.size());
  for (const auto& f : recording.fixations) out.push_back(locator.map(f, snap_tol_cols));
  return out;
}

TransitionProfile build_profile(const GridRecording& recording, const SyntaxTree& tree,
                                const LinkOptions& options) {
  const auto mapped = map_recording(recording, tree, options.snap_tol_cols);
  const std::size_t n_leaves = tree.leaves().size();

  std::unordered_map<std::size_t, std::string> path_cache;
  std::map<std::string, std::uint64_t> counts;
  std::optional<std::size_t> prev;
  for (const MappedFixation& m : mapped) {
    if (!m.leaf_index) {
      if (options.chain == ChainMode::Strict) prev.reset();
      continue;
    }
    const std::size_t cur = *m.leaf_index;
    if (prev) {
      if (*prev == cur) {
        if (options.self_transitions == SelfTransitions::Keep) {
          // A leaf has no path to itself; a kept self-transition is recorded
          // under the degenerate path made of its parent label.
          const LeafToken& l = tree.leaves()[cur];
          const auto ctx = PathContext::make(l.text, tree.node(l.parent).label, l.text);
          ++counts[ctx.str()];
        }
      } else {
        const std::size_t key = *prev * n_leaves + cur;
        auto it = path_cache.find(key);
        if (it == path_cache.end()) {
          it = path_cache.emplace(key, path_between(tree, *prev, cur).str()).first;
        }
        ++counts[it->second];
      }
    }
    prev = cur;
  }
  return make_profile(recording.recording_id, counts);
}

TransitionProfile merge_profiles(const TransitionProfile& a, const TransitionProfile& b,
                                 std::string recording_id) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& e : a.entries) counts[e.context.str()] += e.count;
  for (const auto& e : b.entries) counts[e.context.str()] += e.count;
  return make_profile(std::move(recording_id), counts);
}

namespace {

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

void write_profile_json(std::ostream& out, const TransitionProfile& profile) {
  std::vector<const ProfileEntry*> order;
  order.reserve(profile.entries.size());
  for (const auto& e : profile.entries) order.push_back(&e);
  // entries are already in context order, so a stable sort on count suffices
  std::stable_sort(order.begin(), order.end(),
                   [](const ProfileEntry* x, const ProfileEntry* y) { return x->count > y->count; });

  out << "{\"recording_id\": " << quoted(profile.recording_id)
      << ", \"total_transitions\": " << profile.total_transitions << ", \"entries\": [";
  for (std::size_t k = 0; k < order.size(); ++k) {
    const ProfileEntry& e = *order[k];
    out << (k ? ",\n  " : "\n  ") << "{\"context\": " << quoted(e.context.str())
        << ", \"hash\": \"" << e.context.hash << "\", \"count\": " << e.count
        << ", \"ratio\": " << format_real(e.ratio) << "}";
  }
  out << (order.empty() ? "]}\n" : "\n]}\n");
}

std::string profile_json(const TransitionProfile& profile) {
  std::ostringstream s;
  write_profile_json(s, profile);
  return s.str();
}

TransitionProfile read_profile_json(std::istream& in) {
  using Kind = FormatError::Kind;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(Kind::BadDocument, 0, fmt::format("invalid profile JSON: {}", e.what()));
  }
  try {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& e : doc.at("entries")) {
      const auto ctx = e.at("context").get<std::string>();
      const auto hash = parse_uint(e.at("hash").get<std::string>());
      const PathContext parsed = parse_context_string(ctx);
      if (!hash || *hash != parsed.hash) {
        throw FormatError(Kind::BadDocument, 0, fmt::format("hash mismatch for \"{}\"", ctx));
      }
      const auto count = e.at("count").get<std::uint64_t>();
      if (count == 0 || !counts.emplace(ctx, count).second) {
        throw FormatError(Kind::BadDocument, 0, fmt::format("bad or repeated entry \"{}\"", ctx));
      }
    }
    auto p = make_profile(doc.at("recording_id").get<std::string>(), counts);
    if (p.total_transitions != doc.at("total_transitions").get<std::uint64_t>()) {
      throw FormatError(Kind::BadDocument, 0, "total_transitions does not equal the sum of counts");
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(Kind::BadDocument, 0, fmt::format("profile JSON schema: {}", e.what()));
  }
}

}  // namespace eye2vec
