#pragma once

// Brute-force reference implementations used to check the library. They
// share no code paths with the implementations they verify.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eye2vec/gaze.hpp"
#include "eye2vec/linker.hpp"
#include "eye2vec/minilang.hpp"

namespace eye2vec::testing {

// Parent chain from a leaf's parent up to the root.
inline std::vector<minilang::NodeId> parent_chain(const minilang::SyntaxTree& t,
                                                  std::size_t leaf) {
  std::vector<minilang::NodeId> chain;
  std::optional<minilang::NodeId> cur = t.leaves()[leaf].parent;
  while (cur) {
    chain.push_back(*cur);
    cur = t.node(*cur).parent;
  }
  return chain;
}

// "source,path,target" via set intersection of the two parent chains.
inline std::string oracle_context(const minilang::SyntaxTree& t, std::size_t a, std::size_t b) {
  const auto ca = parent_chain(t, a);
  const auto cb = parent_chain(t, b);
  const std::set<minilang::NodeId> in_b(cb.begin(), cb.end());
  std::size_t lca_pos_a = 0;
  while (!in_b.contains(ca[lca_pos_a])) ++lca_pos_a;
  const minilang::NodeId lca = ca[lca_pos_a];
  const std::size_t lca_pos_b =
      static_cast<std::size_t>(std::find(cb.begin(), cb.end(), lca) - cb.begin());

  std::string path;
  for (std::size_t k = 0; k < lca_pos_a; ++k) path += t.node(ca[k]).label + "↑";
  path += t.node(lca).label;
  for (std::size_t k = lca_pos_b; k-- > 0;) path += "↓" + t.node(cb[k]).label;
  return t.leaves()[a].text + "," + path + "," + t.leaves()[b].text;
}

// Leaf hit by a grid position: linear scan over all leaves.
inline std::optional<std::size_t> oracle_map(const minilang::SyntaxTree& t, GridPos p, int tol) {
  for (const auto& l : t.leaves()) {
    if (l.span.start_line == p.line && l.span.start_col <= p.col && p.col <= l.span.end_col) {
      return l.leaf_index;
    }
  }
  std::optional<std::size_t> best;
  int best_d = 0;
  int best_start = 0;
  for (const auto& l : t.leaves()) {
    if (l.span.start_line != p.line) continue;
    const int d = std::max(l.span.start_col - p.col, p.col - l.span.end_col);
    if (d > tol) continue;
    if (!best || d < best_d || (d == best_d && l.span.start_col < best_start)) {
      best = l.leaf_index;
      best_d = d;
      best_start = l.span.start_col;
    }
  }
  return best;
}

struct Recount {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
};

// Counts transitions from scratch: map, then walk the mapped sequence.
inline Recount oracle_recount(const GridRecording& rec, const minilang::SyntaxTree& t,
                              const LinkOptions& opt) {
  std::vector<std::optional<std::size_t>> seq;
  for (const auto& f : rec.fixations) seq.push_back(oracle_map(t, f.position, opt.snap_tol_cols));

  Recount r;
  std::optional<std::size_t> prev;
  for (const auto& cur : seq) {
    if (!cur) {
      if (opt.chain == ChainMode::Strict) prev.reset();
      continue;
    }
    if (prev && *prev != *cur) {
      ++r.counts[oracle_context(t, *prev, *cur)];
      ++r.total;
    } else if (prev && opt.self_transitions == SelfTransitions::Keep) {
      const auto& l = t.leaves()[*cur];
      ++r.counts[l.text + "," + t.node(l.parent).label + "," + l.text];
      ++r.total;
    }
    prev = cur;
  }
  return r;
}

}  // namespace eye2vec::testing
