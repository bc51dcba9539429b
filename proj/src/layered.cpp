#include "triesat/layered.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "triesat/error.hpp"

namespace triesat {

const char* to_string(Algorithm a) { return a == Algorithm::Alg1 ? "alg1" : "alg3"; }

const char* to_string(ExpansionKind k) {
  switch (k) {
    case ExpansionKind::Initial: return "initial";
    case ExpansionKind::Group: return "group";
    case ExpansionKind::SingleNode: return "single";
    case ExpansionKind::Scoped: return "scoped";
  }
  return "?";
}

const char* to_string(DuplicateCase c) {
  switch (c) {
    case DuplicateCase::Case1: return "case1";
    case DuplicateCase::Case2: return "case2";
    case DuplicateCase::Case3: return "case3";
  }
  return "?";
}

std::vector<const LayeredEdge*> LayeredGraph::incoming(InstanceId id) const {
  std::vector<const LayeredEdge*> out;
  for (const auto& e : edges) {
    if (e.parent == id) out.push_back(&e);
  }
  return out;
}

bool LayeredGraph::has_parents(InstanceId id) const {
  return std::any_of(edges.begin(), edges.end(), [&](const LayeredEdge& e) { return e.child == id; });
}

std::vector<const Group*> LayeredGraph::groups_in_layer(std::size_t layer) const {
  std::vector<const Group*> out;
  for (const auto& g : groups) {
    if (g.layer == layer) out.push_back(&g);
  }
  return out;
}

namespace {

struct Builder {
  LayeredGraph lg;
  const TrieLikeGraph& g;
  OpCounters* counters;

  Builder(std::shared_ptr<const TrieLikeGraph> src, Algorithm mode, OpCounters* c) : g(*src), counters(c) {
    lg.mode = mode;
    lg.source = std::move(src);
  }

  InstanceId add_instance(NodeId node, std::size_t layer) {
    const auto id = static_cast<InstanceId>(lg.instances.size());
    lg.instances.push_back({id, node, layer});
    if (lg.layers.size() < layer) lg.layers.resize(layer);
    lg.layers[layer - 1].push_back(id);
    bump(counters, "layered_instances");
    return id;
  }

  std::size_t add_expansion(Expansion e) {
    e.id = lg.expansions.size();
    lg.expansions.push_back(std::move(e));
    return lg.expansions.back().id;
  }

  void add_edge(InstanceId child, InstanceId parent, std::size_t expansion) {
    const NodeId c = lg.instances[child].trie_node;
    const NodeId p = lg.instances[parent].trie_node;
    lg.edges.push_back({child, parent, expansion, !g.is_main_edge(c, p)});
    bump(counters, "layered_edges");
  }

  // Label classes among `parents`, in first-appearance order.
  std::vector<std::size_t> make_groups(const std::vector<InstanceId>& parents, std::size_t layer,
                                       std::size_t generated_by) {
    std::vector<std::size_t> ids;
    for (InstanceId p : parents) {
      const NodeLabel& label = g.trie().node(lg.instances[p].trie_node).label;
      auto it = std::find_if(ids.begin(), ids.end(), [&](std::size_t gid) { return lg.groups[gid].label == label; });
      if (it == ids.end()) {
        Group grp;
        grp.id = lg.groups.size();
        grp.layer = layer;
        grp.label = label;
        grp.members = {p};
        grp.generated_by = generated_by;
        lg.groups.push_back(grp);
        ids.push_back(grp.id);
      } else {
        lg.groups[*it].members.push_back(p);
      }
      bump(counters, "grouping_steps");
    }
    return ids;
  }

  std::vector<InstanceId> seed_leaves() {
    std::vector<InstanceId> leaves;
    for (NodeId leaf : g.trie().leaves()) leaves.push_back(add_instance(leaf, 1));
    Expansion e;
    e.layer = 1;
    e.kind = ExpansionKind::Initial;
    e.members = leaves;
    add_expansion(std::move(e));
    return leaves;
  }
};

}  // namespace

LayeredGraph build_layered_alg1(std::shared_ptr<const TrieLikeGraph> src, OpCounters* counters) {
  Builder b(std::move(src), Algorithm::Alg1, counters);
  b.seed_leaves();
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t eid = stack.back();
    stack.pop_back();
    bump(counters, "stack_pops");
    const std::size_t layer = b.lg.expansions[eid].layer + 1;
    const std::vector<InstanceId> members = b.lg.expansions[eid].members;

    // Parents are deduplicated only within this one expansion.
    std::map<NodeId, InstanceId> made;
    std::vector<InstanceId> parents;
    for (InstanceId m : members) {
      for (NodeId p : b.g.parents(b.lg.instances[m].trie_node)) {
        bump(counters, "parent_lookups");
        auto it = made.find(p);
        if (it == made.end()) {
          InstanceId inst = b.add_instance(p, layer);
          it = made.emplace(p, inst).first;
          parents.push_back(inst);
        }
        b.add_edge(m, it->second, eid);
      }
    }
    for (std::size_t gid : b.make_groups(parents, layer, eid)) {
      if (b.lg.groups[gid].members.size() < 2) continue;
      b.lg.groups[gid].pushed = true;
      Expansion e;
      e.layer = layer;
      e.kind = ExpansionKind::Group;
      e.members = b.lg.groups[gid].members;
      e.group = gid;
      stack.push_back(b.add_expansion(std::move(e)));
    }
  }
  return std::move(b.lg);
}

DuplicateCase classify_duplicate_case(const TrieLikeGraph& g, NodeId parent, const std::vector<NodeId>& occurrences) {
  std::vector<NodeId> occ = occurrences;
  std::sort(occ.begin(), occ.end());
  occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
  if (occ.size() < 2) throw Error(ErrorKind::NotADuplicate, "need at least two distinct generating nodes");
  for (NodeId o : occ) {
    const auto& ps = g.parents(o);
    if (std::find(ps.begin(), ps.end(), parent) == ps.end()) {
      throw Error(ErrorKind::NotADuplicate,
                  Trie::display_id(o) + " does not generate " + Trie::display_id(parent));
    }
  }
  const Trie& t = g.trie();
  bool one_path = true;
  bool disjoint = true;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    for (std::size_t j = i + 1; j < occ.size(); ++j) {
      const bool related = t.is_ancestor_or_self(occ[i], occ[j]) || t.is_ancestor_or_self(occ[j], occ[i]);
      one_path = one_path && related;
      disjoint = disjoint && !related;
    }
  }
  if (one_path) return DuplicateCase::Case2;
  const bool all_spans =
      std::none_of(occ.begin(), occ.end(), [&](NodeId o) { return g.is_main_edge(o, parent); });
  if (disjoint && all_spans) return DuplicateCase::Case1;
  return DuplicateCase::Case3;
}

std::vector<NodeId> anchors_for(const TrieLikeGraph& g, NodeId v) {
  std::vector<NodeId> path = g.trie().path_from_root(v);
  path.pop_back();
  return path;
}

ReachableSubset reachable_subset(const TrieLikeGraph& g, NodeId repeated, NodeId anchor, const NodeLabel& label) {
  const Trie& t = g.trie();
  if (anchor == repeated || !t.is_ancestor_or_self(anchor, repeated)) {
    throw Error(ErrorKind::AnchorNotOnPath, Trie::display_id(anchor) + " is not above " + Trie::display_id(repeated));
  }
  ReachableSubset rs{repeated, anchor, label, {}};
  for (NodeId w : t.subtree(repeated)) {
    if (t.node(w).label == label && g.find_span(w, anchor)) rs.members.push_back(w);
  }
  std::sort(rs.members.begin(), rs.members.end());
  return rs;
}

std::vector<ReachableSubset> all_reachable_subsets(const TrieLikeGraph& g, NodeId repeated) {
  const std::vector<NodeId> anchors = anchors_for(g, repeated);
  if (anchors.empty()) {
    throw Error(ErrorKind::AnchorNotOnPath, Trie::display_id(repeated) + " is the root; no anchor exists");
  }
  std::vector<ReachableSubset> out;
  const std::vector<NodeId> below = g.trie().subtree(repeated);
  for (NodeId u : anchors) {
    std::vector<NodeLabel> labels;
    for (NodeId w : below) {
      const NodeLabel& l = g.trie().node(w).label;
      if (g.find_span(w, u) && std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    }
    for (const auto& l : labels) out.push_back(reachable_subset(g, repeated, u, l));
  }
  return out;
}

UpperBoundary upper_boundary(const TrieLikeGraph& g, const std::vector<ReachableSubset>& subsets) {
  if (subsets.empty()) throw Error(ErrorKind::DegenerateSubsets, "no reachable subsets");
  UpperBoundary ub;
  ub.derived_from = subsets;
  for (const auto& rs : subsets) {
    if (rs.members.size() < 2) {
      throw Error(ErrorKind::DegenerateSubsets, "subset at anchor " + Trie::display_id(rs.anchor) + " has " +
                                                    std::to_string(rs.members.size()) + " member(s)");
    }
    NodeId top = rs.members.front();
    for (NodeId w : rs.members) top = g.trie().lca(top, w);
    ub.members.push_back(top);
  }
  std::sort(ub.members.begin(), ub.members.end());
  ub.members.erase(std::unique(ub.members.begin(), ub.members.end()), ub.members.end());
  return ub;
}

namespace {

// Fills subsets/boundary/degenerate/reason; returns the depth floor when scoped.
std::optional<std::size_t> analyse_merge(const TrieLikeGraph& g, MergeEvent& ev, OpCounters* counters) {
  std::vector<ReachableSubset> all;
  try {
    all = all_reachable_subsets(g, ev.trie_node);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AnchorNotOnPath) throw;
    ev.degenerate = true;
    ev.reason = "anchor-not-on-path";
    bump(counters, "degenerate_merges");
    return std::nullopt;
  }
  bump(counters, "reachable_subsets", all.size());
  ev.subsets = all;
  std::vector<ReachableSubset> relevant;
  for (const auto& rs : all) {
    if (rs.members.size() >= 2) relevant.push_back(rs);
  }
  try {
    ev.boundary = upper_boundary(g, relevant);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateSubsets) throw;
    ev.degenerate = true;
    ev.reason = "no-subset-with-two-members";
    bump(counters, "degenerate_merges");
    return std::nullopt;
  }
  ev.degenerate = false;
  ev.reason = "scoped-by-upper-boundary";
  std::size_t floor = g.trie().node(relevant.front().anchor).depth;
  for (const auto& rs : relevant) floor = std::min(floor, g.trie().node(rs.anchor).depth);
  return floor;
}

}  // namespace

LayeredGraph build_layered_alg3(std::shared_ptr<const TrieLikeGraph> src, OpCounters* counters) {
  Builder b(std::move(src), Algorithm::Alg3, counters);
  b.seed_leaves();
  std::vector<std::size_t> calls{0};
  while (!calls.empty()) {
    const std::size_t layer = b.lg.expansions[calls.front()].layer + 1;
    std::map<NodeId, InstanceId> made;  // one instance per trie node in this layer
    std::vector<InstanceId> created;
    std::map<InstanceId, std::vector<InstanceId>> generators;
    std::map<InstanceId, std::set<std::size_t>> produced_by;
    std::vector<std::vector<InstanceId>> call_parents(calls.size());

    for (std::size_t ci = 0; ci < calls.size(); ++ci) {
      const Expansion exp = b.lg.expansions[calls[ci]];
      bump(counters, "stack_pops");
      for (InstanceId m : exp.members) {
        for (NodeId p : b.g.parents(b.lg.instances[m].trie_node)) {
          bump(counters, "parent_lookups");
          if (exp.depth_floor && b.g.trie().node(p).depth < *exp.depth_floor) {
            bump(counters, "pruned_by_upper_boundary");
            continue;
          }
          auto it = made.find(p);
          if (it == made.end()) {
            InstanceId inst = b.add_instance(p, layer);
            it = made.emplace(p, inst).first;
            created.push_back(inst);
          }
          const InstanceId inst = it->second;
          auto& cp = call_parents[ci];
          if (std::find(cp.begin(), cp.end(), inst) == cp.end()) cp.push_back(inst);
          auto& gen = generators[inst];
          if (std::find(gen.begin(), gen.end(), m) == gen.end()) gen.push_back(m);
          produced_by[inst].insert(exp.id);
          b.add_edge(m, inst, exp.id);
        }
      }
    }

    std::vector<std::size_t> next;
    std::map<InstanceId, std::size_t> scheduled;
    auto schedule = [&](Expansion e) {
      const std::size_t id = b.add_expansion(std::move(e));
      for (InstanceId m : b.lg.expansions[id].members) scheduled[m] = id;
      next.push_back(id);
      return id;
    };

    // Same-label parents of one call recurse together, as in Algorithm 1.
    for (std::size_t ci = 0; ci < calls.size(); ++ci) {
      for (std::size_t gid : b.make_groups(call_parents[ci], layer, calls[ci])) {
        std::vector<InstanceId> free;
        for (InstanceId m : b.lg.groups[gid].members) {
          if (!scheduled.count(m)) free.push_back(m);
        }
        if (b.lg.groups[gid].members.size() < 2 || free.size() < 2) continue;
        b.lg.groups[gid].pushed = true;
        Expansion e;
        e.layer = layer;
        e.kind = ExpansionKind::Group;
        e.members = free;
        e.group = gid;
        schedule(std::move(e));
      }
    }

    // Merged duplicates: classify, try to scope, otherwise recurse on the node alone.
    for (InstanceId inst : created) {
      const auto& gen = generators[inst];
      if (gen.size() < 2) continue;
      MergeEvent ev;
      ev.layer = layer;
      ev.instance = inst;
      ev.trie_node = b.lg.instances[inst].trie_node;
      ev.generators = gen;
      std::vector<NodeId> occ;
      for (InstanceId m : gen) occ.push_back(b.lg.instances[m].trie_node);
      ev.duplicate_case = classify_duplicate_case(b.g, ev.trie_node, occ);
      bump(counters, "duplicate_merges");
      const std::optional<std::size_t> floor = analyse_merge(b.g, ev, counters);
      if (auto it = scheduled.find(inst); it != scheduled.end()) {
        ev.expansion = it->second;
      } else {
        Expansion e;
        e.layer = layer;
        e.kind = floor ? ExpansionKind::Scoped : ExpansionKind::SingleNode;
        e.members = {inst};
        e.depth_floor = floor;
        ev.expansion = schedule(std::move(e));
      }
      b.lg.merge_events.push_back(std::move(ev));
    }

    // Parents of a multi-member call are never dropped; leftovers recurse singly.
    for (InstanceId inst : created) {
      if (scheduled.count(inst)) continue;
      const bool from_multi = std::any_of(produced_by[inst].begin(), produced_by[inst].end(), [&](std::size_t e) {
        return b.lg.expansions[e].members.size() >= 2;
      });
      if (!from_multi) continue;
      Expansion e;
      e.layer = layer;
      e.kind = ExpansionKind::SingleNode;
      e.members = {inst};
      schedule(std::move(e));
    }
    calls = std::move(next);
  }
  return std::move(b.lg);
}

LayeredGraph build_layered(std::shared_ptr<const TrieLikeGraph> g, Algorithm a, OpCounters* counters) {
  return a == Algorithm::Alg1 ? build_layered_alg1(std::move(g), counters) : build_layered_alg3(std::move(g), counters);
}

}  // namespace triesat
