#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "triesat/counters.hpp"
#include "triesat/sequence.hpp"

namespace triesat {

// A dashed edge jumping from position `from` over the starred run to `to`.
// Positions index into the owning sequence, never variable names.
struct Span {
  std::size_t from = 0;
  std::size_t to = 0;

  auto operator<=>(const Span&) const = default;
  std::size_t covered_count() const { return to - from - 1; }
};

struct PGraph {
  std::string label;
  std::vector<SeqItem> nodes;
  std::vector<Span> spans;  // base spans, sorted

  std::size_t main_edge_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }
};

struct PStarGraph {
  PGraph base;
  std::vector<Span> closed_spans;  // sorted, includes every base span
};

PGraph build_pgraph(const VarSequence& seq);

/// Repeatedly merges spans whose two-node suffix equals another span's
/// two-node prefix until nothing new appears.
PStarGraph close_spans(const PGraph& p, OpCounters* counters = nullptr);

}  // namespace triesat
