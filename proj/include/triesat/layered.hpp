#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "triesat/counters.hpp"
#include "triesat/trie_graph.hpp"

namespace triesat {

using InstanceId = std::uint32_t;

enum class Algorithm { Alg1 = 1, Alg3 = 3 };

const char* to_string(Algorithm a);

struct NodeInstance {
  InstanceId id = 0;
  NodeId trie_node = 0;
  std::size_t layer = 1;  // 1-based; layer 1 holds the leaves
};

struct LayeredEdge {
  InstanceId child = 0;
  InstanceId parent = 0;
  std::size_t expansion = 0;  // which expansion created it
  bool via_span = false;
};

enum class ExpansionKind { Initial, Group, SingleNode, Scoped };

const char* to_string(ExpansionKind k);

// One pop of the work stack: a set of same-layer instances expanded together.
struct Expansion {
  std::size_t id = 0;
  std::size_t layer = 1;
  ExpansionKind kind = ExpansionKind::Initial;
  std::vector<InstanceId> members;
  std::optional<std::size_t> group;        // label group it came from
  std::optional<std::size_t> depth_floor;  // Scoped only: parents above this trie depth are skipped
};

struct Group {
  std::size_t id = 0;
  std::size_t layer = 2;
  NodeLabel label;
  std::vector<InstanceId> members;
  std::size_t generated_by = 0;  // expansion whose parents these are
  bool pushed = false;
};

enum class DuplicateCase { Case1, Case2, Case3 };

const char* to_string(DuplicateCase c);

struct ReachableSubset {
  NodeId repeated = 0;
  NodeId anchor = 0;
  NodeLabel label;
  std::vector<NodeId> members;
};

struct UpperBoundary {
  std::vector<ReachableSubset> derived_from;
  std::vector<NodeId> members;
};

// Algorithm 3 only: a trie node generated more than once in one layer.
struct MergeEvent {
  std::size_t layer = 0;
  InstanceId instance = 0;
  NodeId trie_node = 0;
  std::vector<InstanceId> generators;
  DuplicateCase duplicate_case = DuplicateCase::Case3;
  std::vector<ReachableSubset> subsets;
  std::optional<UpperBoundary> boundary;
  bool degenerate = true;
  std::string reason;
  std::optional<std::size_t> expansion;
};

class LayeredGraph {
 public:
  Algorithm mode = Algorithm::Alg1;
  std::shared_ptr<const TrieLikeGraph> source;
  std::vector<std::vector<InstanceId>> layers;  // layers[0] is layer 1
  std::vector<NodeInstance> instances;
  std::vector<LayeredEdge> edges;
  std::vector<Group> groups;
  std::vector<Expansion> expansions;
  std::vector<MergeEvent> merge_events;

  std::size_t layer_count() const { return layers.size(); }
  const NodeInstance& instance(InstanceId id) const { return instances.at(id); }
  /// Edges whose parent is `id`, i.e. the instances that generated it.
  std::vector<const LayeredEdge*> incoming(InstanceId id) const;
  bool has_parents(InstanceId id) const;
  std::vector<const Group*> groups_in_layer(std::size_t layer) const;
};

LayeredGraph build_layered_alg1(std::shared_ptr<const TrieLikeGraph> g, OpCounters* counters = nullptr);

/// Reconstructed improved search: per-layer merging of duplicate trie nodes,
/// case classification and reachable-subset / upper-boundary scoping.
LayeredGraph build_layered_alg3(std::shared_ptr<const TrieLikeGraph> g, OpCounters* counters = nullptr);

LayeredGraph build_layered(std::shared_ptr<const TrieLikeGraph> g, Algorithm a, OpCounters* counters = nullptr);

/// Case2: all occurrences on one root-to-leaf path. Case1: pairwise on
/// different branches and every one reaches `parent` through a span.
/// Anything else is Case3.
DuplicateCase classify_duplicate_case(const TrieLikeGraph& g, NodeId parent, const std::vector<NodeId>& occurrences);

/// Proper ancestors of `v`, root first. Empty for the root.
std::vector<NodeId> anchors_for(const TrieLikeGraph& g, NodeId v);

/// Label-`label` nodes in the subtree of `repeated` with a span edge into `anchor`.
ReachableSubset reachable_subset(const TrieLikeGraph& g, NodeId repeated, NodeId anchor, const NodeLabel& label);

/// Every non-empty RS for `repeated`, grouped by anchor then label.
std::vector<ReachableSubset> all_reachable_subsets(const TrieLikeGraph& g, NodeId repeated);

/// Trie LCA of each subset's members, deduplicated.
UpperBoundary upper_boundary(const TrieLikeGraph& g, const std::vector<ReachableSubset>& subsets);

}  // namespace triesat
