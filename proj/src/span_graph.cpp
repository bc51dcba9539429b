#include "triesat/span_graph.hpp"

#include <algorithm>
#include <set>

namespace triesat {

PGraph build_pgraph(const VarSequence& seq) {
  PGraph p;
  p.label = seq.label;
  p.nodes = seq.items;
  for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
    if (p.nodes[i].is_starred()) p.spans.push_back({i - 1, i + 1});
  }
  return p;
}

PStarGraph close_spans(const PGraph& p, OpCounters* counters) {
  std::set<Span> closed(p.spans.begin(), p.spans.end());
  bool grew = true;
  while (grew) {
    grew = false;
    bump(counters, "closure_rounds");
    std::vector<Span> snapshot(closed.begin(), closed.end());
    for (const Span& first : snapshot) {
      // Second span must start at first.to - 1 so the two share <k, j>.
      auto it = closed.lower_bound(Span{first.to - 1, 0});
      for (; it != closed.end() && it->from == first.to - 1; ++it) {
        bump(counters, "closure_pair_checks");
        Span merged{first.from, it->to};
        if (closed.insert(merged).second) {
          bump(counters, "closure_spans_added");
          grew = true;
        }
      }
    }
  }
  PStarGraph out;
  out.base = p;
  out.closed_spans.assign(closed.begin(), closed.end());
  return out;
}

}  // namespace triesat
