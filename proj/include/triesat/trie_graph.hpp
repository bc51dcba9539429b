#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triesat/counters.hpp"
#include "triesat/span_graph.hpp"

namespace triesat {

// Zero-based; rendered one-based as n1, n2, ...
using NodeId = std::uint32_t;

struct NodeLabel {
  ItemTag tag = ItemTag::Start;  // Start, Var or End; starred items collapse to Var
  std::optional<VarId> var;

  bool operator==(const NodeLabel&) const = default;
  static NodeLabel of(const SeqItem& item);
};

struct TrieNode {
  NodeId id = 0;
  NodeLabel label;
  std::optional<NodeId> parent;
  std::vector<NodeId> children;
  std::vector<std::string> conjunction_labels;  // non-empty exactly on End leaves
  std::size_t depth = 0;
};

class Trie {
 public:
  Trie() = default;
  Trie(std::vector<TrieNode> nodes, std::vector<std::string> variable_names)
      : nodes_(std::move(nodes)), variable_names_(std::move(variable_names)) {}

  const std::vector<TrieNode>& nodes() const { return nodes_; }
  const TrieNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }
  std::size_t edge_count() const { return nodes_.empty() ? 0 : nodes_.size() - 1; }
  NodeId root() const { return 0; }
  const std::vector<std::string>& variable_names() const { return variable_names_; }

  std::vector<NodeId> leaves() const;
  /// True when `a` is `b` or lies on the path from the root to `b`.
  bool is_ancestor_or_self(NodeId a, NodeId b) const;
  NodeId lca(NodeId a, NodeId b) const;
  std::vector<NodeId> path_from_root(NodeId id) const;
  std::vector<NodeId> subtree(NodeId id) const;

  static std::string display_id(NodeId id) { return "n" + std::to_string(id + 1); }
  std::string label_text(NodeId id) const;

 private:
  std::vector<TrieNode> nodes_;
  std::vector<std::string> variable_names_;
};

// For every conjunction, the trie node each p-graph position was merged into.
struct NodeMap {
  std::vector<std::string> labels;
  std::vector<std::vector<NodeId>> positions;

  std::optional<std::size_t> index_of(const std::string& label) const;
};

struct MergedTrie {
  Trie trie;
  NodeMap node_map;
};

/// Merges main paths by first-node label, recursively. Nodes are numbered in
/// depth-first creation order. Branches under '#' are created in input order;
/// deeper branches smallest-first (ties in input order).
MergedTrie merge_main_paths(const std::vector<PGraph>& pgraphs, std::vector<std::string> variable_names,
                            OpCounters* counters = nullptr);

// Rootward span edge: `from` is a descendant of `to`.
struct SpanEdge {
  NodeId from = 0;
  NodeId to = 0;
  std::vector<std::string> labels;  // conjunctions whose p*-graph contributed it
};

class TrieLikeGraph {
 public:
  TrieLikeGraph() = default;
  TrieLikeGraph(Trie trie, NodeMap map, std::vector<SpanEdge> spans);

  const Trie& trie() const { return trie_; }
  const NodeMap& node_map() const { return node_map_; }
  const std::vector<SpanEdge>& span_edges() const { return span_edges_; }

  /// Main parent first, then span targets by ascending id. This view carries
  /// no conjunction attribution.
  const std::vector<NodeId>& parents(NodeId id) const { return parents_.at(id); }
  const SpanEdge* find_span(NodeId from, NodeId to) const;
  bool is_main_edge(NodeId child, NodeId parent) const;

  std::size_t vertex_count() const { return trie_.size(); }
  std::size_t edge_count() const { return trie_.edge_count() + span_edges_.size(); }

 private:
  Trie trie_;
  NodeMap node_map_;
  std::vector<SpanEdge> span_edges_;  // sorted by (from, to)
  std::vector<std::vector<NodeId>> parents_;
};

TrieLikeGraph overlay_spans(Trie trie, NodeMap map, const std::vector<PStarGraph>& pstars,
                            OpCounters* counters = nullptr);

}  // namespace triesat
