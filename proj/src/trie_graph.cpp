#include "triesat/trie_graph.hpp"

#include <algorithm>
#include <map>

#include "triesat/error.hpp"

namespace triesat {

NodeLabel NodeLabel::of(const SeqItem& item) {
  if (item.tag == ItemTag::StarredVar) return {ItemTag::Var, item.var};
  return {item.tag, item.var};
}

std::vector<NodeId> Trie::leaves() const {
  std::vector<NodeId> out;
  for (const auto& n : nodes_) {
    if (n.children.empty()) out.push_back(n.id);
  }
  return out;
}

bool Trie::is_ancestor_or_self(NodeId a, NodeId b) const {
  const std::size_t da = node(a).depth;
  while (node(b).depth > da) b = *node(b).parent;
  return a == b;
}

NodeId Trie::lca(NodeId a, NodeId b) const {
  while (node(a).depth > node(b).depth) a = *node(a).parent;
  while (node(b).depth > node(a).depth) b = *node(b).parent;
  while (a != b) {
    a = *node(a).parent;
    b = *node(b).parent;
  }
  return a;
}

std::vector<NodeId> Trie::path_from_root(NodeId id) const {
  std::vector<NodeId> path{id};
  while (node(path.back()).parent) path.push_back(*node(path.back()).parent);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<NodeId> Trie::subtree(NodeId id) const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    const auto& ch = node(cur).children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::string Trie::label_text(NodeId id) const {
  const NodeLabel& l = node(id).label;
  switch (l.tag) {
    case ItemTag::Start: return "#";
    case ItemTag::End: return "$";
    default: return variable_names_.at(*l.var);
  }
}

std::optional<std::size_t> NodeMap::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::nullopt;
}

namespace {

struct TrieBuilder {
  const std::vector<PGraph>& pgraphs;
  std::vector<TrieNode> nodes;
  NodeMap map;
  OpCounters* counters;

  NodeId build(const std::vector<std::size_t>& members, std::size_t pos, std::optional<NodeId> parent) {
    const NodeId id = static_cast<NodeId>(nodes.size());
    TrieNode node;
    node.id = id;
    node.label = NodeLabel::of(pgraphs[members.front()].nodes[pos]);
    node.parent = parent;
    node.depth = parent ? nodes[*parent].depth + 1 : 0;
    nodes.push_back(node);
    bump(counters, "trie_nodes_created");
    for (std::size_t idx : members) {
      map.positions[idx][pos] = id;
      bump(counters, "trie_position_merges");
    }

    if (node.label.tag == ItemTag::End) {
      for (std::size_t idx : members) nodes[id].conjunction_labels.push_back(pgraphs[idx].label);
      return id;
    }

    std::vector<std::pair<NodeLabel, std::vector<std::size_t>>> groups;
    for (std::size_t idx : members) {
      const NodeLabel next = NodeLabel::of(pgraphs[idx].nodes.at(pos + 1));
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == next; });
      if (it == groups.end()) {
        groups.push_back({next, {idx}});
      } else {
        it->second.push_back(idx);
      }
    }
    if (node.depth > 0) {
      std::stable_sort(groups.begin(), groups.end(),
                       [](const auto& a, const auto& b) { return a.second.size() < b.second.size(); });
    }
    for (const auto& g : groups) {
      NodeId child = build(g.second, pos + 1, id);
      nodes[id].children.push_back(child);
    }
    return id;
  }
};

}  // namespace

MergedTrie merge_main_paths(const std::vector<PGraph>& pgraphs, std::vector<std::string> variable_names,
                            OpCounters* counters) {
  if (pgraphs.empty()) throw Error(ErrorKind::EmptyGraph, "no p-graphs to merge");
  for (const auto& p : pgraphs) {
    if (p.nodes.size() < 2 || p.nodes.front().tag != ItemTag::Start || p.nodes.back().tag != ItemTag::End) {
      throw Error(ErrorKind::InvalidArgument, "p-graph " + p.label + " is not wrapped in # ... $");
    }
  }
  TrieBuilder b{pgraphs, {}, {}, counters};
  for (const auto& p : pgraphs) {
    b.map.labels.push_back(p.label);
    b.map.positions.emplace_back(p.nodes.size(), NodeId{0});
  }
  std::vector<std::size_t> all(pgraphs.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  b.build(all, 0, std::nullopt);
  return {Trie(std::move(b.nodes), std::move(variable_names)), std::move(b.map)};
}

TrieLikeGraph::TrieLikeGraph(Trie trie, NodeMap map, std::vector<SpanEdge> spans)
    : trie_(std::move(trie)), node_map_(std::move(map)), span_edges_(std::move(spans)) {
  std::sort(span_edges_.begin(), span_edges_.end(),
            [](const SpanEdge& a, const SpanEdge& b) { return std::pair(a.from, a.to) < std::pair(b.from, b.to); });
  parents_.resize(trie_.size());
  for (const auto& n : trie_.nodes()) {
    if (n.parent) parents_[n.id].push_back(*n.parent);
  }
  for (const auto& e : span_edges_) parents_[e.from].push_back(e.to);
  for (auto& p : parents_) {
    if (p.size() > 1) std::sort(p.begin() + 1, p.end());
  }
}

const SpanEdge* TrieLikeGraph::find_span(NodeId from, NodeId to) const {
  auto it = std::lower_bound(span_edges_.begin(), span_edges_.end(), std::pair(from, to),
                             [](const SpanEdge& e, const std::pair<NodeId, NodeId>& key) {
                               return std::pair(e.from, e.to) < key;
                             });
  if (it != span_edges_.end() && it->from == from && it->to == to) return &*it;
  return nullptr;
}

bool TrieLikeGraph::is_main_edge(NodeId child, NodeId parent) const {
  const auto& p = trie_.node(child).parent;
  return p && *p == parent;
}

TrieLikeGraph overlay_spans(Trie trie, NodeMap map, const std::vector<PStarGraph>& pstars,
                            OpCounters* counters) {
  std::map<std::pair<NodeId, NodeId>, std::vector<std::string>> edges;
  for (const auto& ps : pstars) {
    auto idx = map.index_of(ps.base.label);
    if (!idx) throw Error(ErrorKind::UnmappedPosition, "conjunction " + ps.base.label + " has no node map");
    const auto& positions = map.positions[*idx];
    for (const Span& s : ps.closed_spans) {
      if (s.to >= positions.size()) {
        throw Error(ErrorKind::UnmappedPosition,
                    "position " + std::to_string(s.to) + " of " + ps.base.label + " is unmapped");
      }
      auto& labels = edges[{positions[s.to], positions[s.from]}];
      if (std::find(labels.begin(), labels.end(), ps.base.label) == labels.end()) {
        labels.push_back(ps.base.label);
      }
      bump(counters, "span_overlays");
    }
  }
  std::vector<SpanEdge> spans;
  spans.reserve(edges.size());
  for (auto& [key, labels] : edges) spans.push_back({key.first, key.second, std::move(labels)});
  return TrieLikeGraph(std::move(trie), std::move(map), std::move(spans));
}

}  // namespace triesat
