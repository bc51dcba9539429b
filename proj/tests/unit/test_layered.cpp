#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "triesat/error.hpp"
#include "triesat/subset_finder.hpp"

using namespace triesat;

namespace {

PipelineRun run(const CnfFormula& f, OrderingPolicy pol, Algorithm a) {
  PipelineOptions o;
  o.ordering = std::move(pol);
  o.algorithm = a;
  o.find_answer = false;
  return run_pipeline(f, o);
}

PipelineRun running(Algorithm a) { return run(make_cnf(3, {{1, -2}, {-1, 3}}), OrderingPolicy::lexical(), a); }
PipelineRun ce1(Algorithm a) {
  return run(make_cnf(1, {{-1, -1}, {-1, -1}}), OrderingPolicy::tie_list("y1>y2>v1"), a);
}
PipelineRun ce3(Algorithm a) { return run(make_cnf(1, {{-1, -1}, {1, 1}}), OrderingPolicy::tie_list("y2>y1>v1"), a); }

// A transcription of a hand-drawn layered graph: nodes as {key, layer, n-number}
// and edges as {child key, parent key}.
struct Drawing {
  std::vector<std::array<int, 3>> nodes;
  std::vector<std::pair<int, int>> edges;
};

// Canonical bottom-up signature of every instance: its trie node, layer and the
// sorted signatures of the instances it was generated from. Equal multisets
// mean the two graphs are isomorphic as layered DAGs.
std::multiset<std::string> signatures(const std::vector<std::array<int, 2>>& inst,
                                      const std::vector<std::pair<int, int>>& edges) {
  std::map<int, std::vector<int>> kids;
  for (auto [c, p] : edges) kids[p].push_back(c);
  std::map<int, std::string> memo;
  std::function<std::string(int)> sig = [&](int i) -> std::string {
    if (auto it = memo.find(i); it != memo.end()) return it->second;
    std::vector<std::string> parts;
    for (int k : kids[i]) parts.push_back(sig(k));
    std::sort(parts.begin(), parts.end());
    std::string s = "L" + std::to_string(inst[i][0]) + "n" + std::to_string(inst[i][1]) + "[";
    for (const auto& p : parts) s += p + ",";
    return memo[i] = s + "]";
  };
  std::multiset<std::string> out;
  for (std::size_t i = 0; i < inst.size(); ++i) out.insert(sig(int(i)));
  return out;
}

std::multiset<std::string> signatures(const LayeredGraph& lg) {
  std::vector<std::array<int, 2>> inst;
  for (const auto& i : lg.instances) inst.push_back({int(i.layer), int(i.trie_node) + 1});
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : lg.edges) edges.push_back({int(e.child), int(e.parent)});
  return signatures(inst, edges);
}

std::multiset<std::string> signatures(const Drawing& d) {
  std::map<int, int> index;
  std::vector<std::array<int, 2>> inst;
  for (const auto& n : d.nodes) {
    index[n[0]] = int(inst.size());
    inst.push_back({n[1], n[2]});
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [c, p] : d.edges) edges.push_back({index.at(c), index.at(p)});
  return signatures(inst, edges);
}

std::vector<std::multiset<int>> layer_nodes(const LayeredGraph& lg) {
  std::vector<std::multiset<int>> out;
  for (const auto& layer : lg.layers) {
    std::multiset<int> s;
    for (InstanceId id : layer) s.insert(int(lg.instance(id).trie_node) + 1);
    out.push_back(s);
  }
  return out;
}

std::set<int> member_nodes(const LayeredGraph& lg, const Group& g) {
  std::set<int> s;
  for (InstanceId id : g.members) s.insert(int(lg.instance(id).trie_node) + 1);
  return s;
}

void check_invariants(const LayeredGraph& lg) {
  const TrieLikeGraph& g = *lg.source;
  const Trie& t = g.trie();
  std::set<NodeId> leaves;
  for (InstanceId id : lg.layers.at(0)) leaves.insert(lg.instance(id).trie_node);
  const auto tl = t.leaves();
  CHECK(leaves == std::set<NodeId>(tl.begin(), tl.end()));
  CHECK(lg.layers[0].size() == tl.size());

  for (const auto& e : lg.edges) {
    const NodeInstance& c = lg.instance(e.child);
    const NodeInstance& p = lg.instance(e.parent);
    CHECK(p.layer == c.layer + 1);
    const bool main = t.node(c.trie_node).parent == p.trie_node;
    const bool span = g.find_span(c.trie_node, p.trie_node) != nullptr;
    CHECK((main || span));
    CHECK(e.via_span == !main);
  }

  // members of a group are parents of members of the expansion that made them
  for (const auto& grp : lg.groups) {
    REQUIRE_FALSE(grp.members.empty());
    const Expansion& ex = lg.expansions.at(grp.generated_by);
    std::set<InstanceId> from(ex.members.begin(), ex.members.end());
    for (InstanceId m : grp.members) {
      CHECK(lg.instance(m).layer == grp.layer);
      CHECK(t.node(lg.instance(m).trie_node).label == grp.label);
      bool linked = false;
      for (const auto* e : lg.incoming(m)) linked = linked || from.count(e->child);
      CHECK(linked);
    }
  }

  std::size_t longest = 0;
  for (NodeId l : tl) longest = std::max(longest, t.node(l).depth + 1);
  CHECK(lg.layer_count() <= longest);

  if (lg.mode == Algorithm::Alg3) {
    for (const auto& layer : lg.layers) {
      std::set<NodeId> seen;
      for (InstanceId id : layer) CHECK(seen.insert(lg.instance(id).trie_node).second);
    }
  }
}

CnfFormula random_cnf(std::mt19937& rng, int max_n0, int max_m0) {
  const int m0 = std::uniform_int_distribution<int>(1, max_m0)(rng);
  const int n0 = std::uniform_int_distribution<int>(1, max_n0)(rng);
  std::uniform_int_distribution<int> var(1, m0), sign(0, 1);
  std::vector<std::array<int, 2>> cl;
  for (int i = 0; i < n0; ++i) cl.push_back({var(rng) * (sign(rng) ? 1 : -1), var(rng) * (sign(rng) ? 1 : -1)});
  return make_cnf(std::size_t(m0), cl);
}

// Two branches under one p node, each ending in an r node spanned to the root,
// plus a third branch that shares nothing.
std::shared_ptr<const TrieLikeGraph> three_branch_graph() {
  // vars: p=0 q=1 r=2 s=3 t=4
  using S = SeqItem;
  std::vector<VarSequence> seqs{
      {"a", {S::start(), S::starred(0), S::starred(1), S::present(2), S::end()}},
      {"b", {S::start(), S::starred(0), S::starred(3), S::present(2), S::end()}},
      {"c", {S::start(), S::present(4), S::end()}},
  };
  std::vector<PGraph> ps;
  std::vector<PStarGraph> stars;
  for (const auto& s : seqs) {
    ps.push_back(build_pgraph(s));
    stars.push_back(close_spans(ps.back()));
  }
  MergedTrie mt = merge_main_paths(ps, {"p", "q", "r", "s", "t"});
  return std::make_shared<const TrieLikeGraph>(overlay_spans(mt.trie, mt.node_map, stars));
}

}  // namespace

TEST_CASE("running example layered graph shape") {
  PipelineRun r = running(Algorithm::Alg1);
  const LayeredGraph& lg = r.layered;
  const Drawing fig{
      {{1, 1, 10},  {2, 1, 5},   {3, 1, 16},  {4, 1, 11},  {5, 2, 8},   {6, 2, 9},   {7, 2, 4},   {8, 2, 15},
       {9, 2, 2},   {10, 2, 3},  {11, 2, 7},  {12, 2, 1},  {13, 3, 8},  {14, 3, 14}, {19, 3, 3},  {20, 3, 13},
       {16, 3, 2},  {17, 3, 12}, {21, 3, 1},  {15, 3, 2},  {18, 3, 6},  {22, 3, 1},  {23, 4, 2},  {24, 4, 6},
       {25, 4, 12}, {26, 4, 7},  {27, 4, 13}, {28, 4, 1},  {29, 4, 2},  {30, 4, 12}, {31, 4, 1},  {32, 5, 2},
       {33, 5, 1},  {34, 5, 6},  {35, 5, 12}, {36, 5, 2},  {37, 5, 1},  {38, 6, 2},  {39, 6, 1}},
      {{1, 5},   {1, 6},   {2, 7},   {2, 9},   {2, 10},  {2, 12},  {3, 8},   {4, 5},   {4, 11},
       {6, 13},  {7, 16},  {7, 19},  {7, 21},  {8, 14},  {8, 17},  {8, 20},  {8, 21},  {10, 15},
       {10, 22}, {11, 15}, {11, 18}, {11, 22}, {13, 23}, {13, 24}, {13, 26}, {14, 25}, {14, 27},
       {14, 28}, {19, 29}, {19, 31}, {20, 30}, {20, 31}, {24, 32}, {24, 33}, {25, 33}, {26, 34},
       {26, 36}, {26, 37}, {27, 35}, {27, 37}, {34, 38}, {34, 39}, {35, 39}}};
  CHECK(lg.layer_count() == 6);
  CHECK(lg.instances.size() == 39);
  CHECK(lg.edges.size() == 43);
  CHECK(signatures(lg) == signatures(fig));
  CHECK(layer_nodes(lg)[1] == std::multiset<int>{8, 9, 4, 15, 2, 3, 7, 1});

  std::vector<std::set<int>> pushed2;
  for (const Group* g : lg.groups_in_layer(2)) {
    if (g->members.size() >= 2) {
      CHECK(g->pushed);
      pushed2.push_back(member_nodes(lg, *g));
    } else {
      CHECK_FALSE(g->pushed);
    }
  }
  CHECK(pushed2 == std::vector<std::set<int>>{{4, 9, 15}, {3, 7}});
  check_invariants(lg);
}

TEST_CASE("counterexample 1 layered graph, algorithm 1") {
  PipelineRun r = ce1(Algorithm::Alg1);
  const LayeredGraph& lg = r.layered;
  const Drawing fig{{{1, 1, 3}, {2, 1, 5}, {3, 1, 7}, {4, 2, 1}, {5, 2, 2}, {6, 2, 4}, {7, 2, 6}, {8, 3, 1}, {9, 3, 2}},
                    {{1, 4}, {1, 5}, {2, 5}, {2, 6}, {3, 7}, {3, 4}, {6, 8}, {6, 9}, {7, 8}}};
  CHECK(lg.layer_count() == 3);
  CHECK(signatures(lg) == signatures(fig));
  CHECK(layer_nodes(lg)[1] == std::multiset<int>{1, 2, 4, 6});
  CHECK(layer_nodes(lg)[2] == std::multiset<int>{1, 2});
  std::vector<const Group*> big;
  for (const Group* g : lg.groups_in_layer(2))
    if (g->members.size() >= 2) big.push_back(g);
  REQUIRE(big.size() == 1);
  CHECK(member_nodes(lg, *big[0]) == std::set<int>{4, 6});
  CHECK(r.graph->trie().variable_names().at(*big[0]->label.var) == "y2");
  CHECK(lg.merge_events.empty());
  check_invariants(lg);
}

TEST_CASE("counterexample 3 layered graph, algorithm 1") {
  PipelineRun r = ce3(Algorithm::Alg1);
  const Drawing fig{{{1, 1, 3},
                     {2, 1, 5},
                     {3, 1, 7},
                     {4, 1, 10},
                     {5, 2, 2},
                     {6, 2, 1},
                     {7, 2, 4},
                     {8, 2, 6},
                     {9, 2, 9},
                     {10, 3, 4},
                     {11, 3, 8},
                     {12, 3, 2},
                     {13, 3, 1},
                     {14, 4, 1},
                     {15, 4, 2}},
                    {{1, 5},
                     {1, 6},
                     {2, 7},
                     {3, 8},
                     {4, 9},
                     {8, 12},
                     {8, 10},
                     {9, 11},
                     {9, 13},
                     {10, 15},
                     {10, 14},
                     {11, 14}}};
  CHECK(r.layered.layer_count() == 4);
  CHECK(signatures(r.layered) == signatures(fig));
  check_invariants(r.layered);
}

TEST_CASE("counterexample 1 layered graph, algorithm 3") {
  PipelineRun r = ce1(Algorithm::Alg3);
  const LayeredGraph& lg = r.layered;
  const Drawing fig{{{1, 1, 7}, {2, 1, 3}, {3, 1, 5}, {4, 2, 6}, {5, 2, 1}, {6, 2, 2}, {7, 2, 4}, {8, 3, 1}, {9, 3, 2},
                     {10, 4, 1}},
                    {{1, 4}, {1, 5}, {2, 6}, {2, 5}, {3, 6}, {3, 7}, {4, 8}, {6, 8}, {7, 8}, {7, 9}, {9, 10}}};
  CHECK(lg.layer_count() == 4);
  CHECK(signatures(lg) == signatures(fig));
  CHECK(layer_nodes(lg)[3] == std::multiset<int>{1});

  REQUIRE(lg.merge_events.size() == 3);
  for (const auto& ev : lg.merge_events) {
    CHECK(ev.degenerate);
    CHECK_FALSE(ev.boundary.has_value());
  }
  const MergeEvent& root_merge = lg.merge_events[1];
  CHECK(root_merge.layer == 2);
  CHECK(root_merge.trie_node == 0);
  CHECK(root_merge.duplicate_case == DuplicateCase::Case1);
  CHECK(root_merge.reason == "anchor-not-on-path");
  CHECK(lg.merge_events[0].trie_node == 1);
  CHECK(lg.merge_events[0].reason == "no-subset-with-two-members");
  check_invariants(lg);
}

TEST_CASE("duplicate case classification") {
  PipelineRun r = ce1(Algorithm::Alg1);
  const TrieLikeGraph& g = *r.graph;
  CHECK(classify_duplicate_case(g, 0, {2, 6}) == DuplicateCase::Case1);  // n3, n7 -> n1
  CHECK(classify_duplicate_case(g, 1, {2, 4}) == DuplicateCase::Case3);  // n3, n5 -> n2

  PipelineRun rr = running(Algorithm::Alg1);
  CHECK(classify_duplicate_case(*rr.graph, 0, {2, 3, 4}) == DuplicateCase::Case2);  // n3, n4, n5 -> n1

  auto expect_not_dup = [&](NodeId parent, std::vector<NodeId> occ) {
    try {
      classify_duplicate_case(g, parent, occ);
      FAIL("expected NotADuplicate");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotADuplicate);
    }
  };
  expect_not_dup(0, {2});
  expect_not_dup(0, {2, 2});
  expect_not_dup(0, {2, 4});  // n5 does not generate n1
}

TEST_CASE("anchors and reachable subsets") {
  PipelineRun r = running(Algorithm::Alg1);
  const TrieLikeGraph& g = *r.graph;
  CHECK(anchors_for(g, 4) == std::vector<NodeId>{0, 1, 2, 3});
  CHECK(anchors_for(g, 0).empty());

  PipelineRun c = ce1(Algorithm::Alg1);
  try {
    all_reachable_subsets(*c.graph, 0);
    FAIL("expected AnchorNotOnPath");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AnchorNotOnPath);
  }
  CHECK_THROWS_AS(reachable_subset(g, 2, 11, NodeLabel{ItemTag::Var, 2}), Error);  // n12 is not above n3
  CHECK_THROWS_AS(reachable_subset(g, 2, 2, NodeLabel{ItemTag::Var, 2}), Error);

  CHECK(reachable_subset(g, 3, 2, NodeLabel{ItemTag::Var, 4}).members.empty());
  // u = n2, c = v3 below n6: only n7 jumps to n2
  CHECK(reachable_subset(g, 5, 1, NodeLabel{ItemTag::Var, 2}).members == std::vector<NodeId>{6});
}

TEST_CASE("reachable subsets agree with a plain span scan") {
  auto check_graph = [](const TrieLikeGraph& g) {
    const Trie& t = g.trie();
    std::set<std::pair<NodeId, NodeId>> spans;
    for (const auto& e : g.span_edges()) spans.insert({e.from, e.to});
    for (NodeId v = 1; v < t.size(); ++v) {
      // descendants by walking parent pointers
      std::vector<NodeId> below;
      for (NodeId w = 0; w < t.size(); ++w) {
        std::optional<NodeId> x = w;
        while (x && *x != v) x = t.node(*x).parent;
        if (x) below.push_back(w);
      }
      for (std::optional<NodeId> u = t.node(v).parent; u; u = t.node(*u).parent) {
        std::map<std::pair<int, int>, std::vector<NodeId>> want;
        for (NodeId w : below) {
          if (!spans.count({w, *u})) continue;
          const auto& l = t.node(w).label;
          want[{int(l.tag), l.var ? int(*l.var) : -1}].push_back(w);
        }
        for (const auto& [key, members] : want) {
          NodeLabel l{ItemTag(key.first), key.second < 0 ? std::nullopt : std::optional<VarId>(VarId(key.second))};
          CHECK(reachable_subset(g, v, *u, l).members == members);
        }
        std::size_t total = 0;
        for (const auto& rs : all_reachable_subsets(g, v))
          if (rs.anchor == *u) total += rs.members.size();
        std::size_t want_total = 0;
        for (const auto& [k, m] : want) want_total += m.size();
        CHECK(total == want_total);
      }
    }
  };
  check_graph(*running(Algorithm::Alg1).graph);
  PipelineRun r = running(Algorithm::Alg1);
  const auto rs = reachable_subset(*r.graph, 2, 1, NodeLabel{ItemTag::End, std::nullopt});  // u = n2 over n3
  CHECK(rs.members == std::vector<NodeId>{4});
  std::mt19937 rng(11);
  for (int i = 0; i < 60; ++i) {
    check_graph(*run(random_cnf(rng, 4, 3), OrderingPolicy::frequency(), Algorithm::Alg1).graph);
  }
}

TEST_CASE("upper boundary on a hand-built graph") {
  auto g = three_branch_graph();
  const Trie& t = g->trie();
  // n1 # / n2 p / n3 q / n4 r / n5 $ / n6 s / n7 r / n8 $ / n9 t / n10 $
  REQUIRE(t.size() == 10);
  CHECK(t.label_text(3) == "r");
  CHECK(t.label_text(6) == "r");
  const auto all = all_reachable_subsets(*g, 1);
  std::vector<ReachableSubset> big;
  for (const auto& rs : all)
    if (rs.members.size() >= 2) big.push_back(rs);
  REQUIRE(big.size() == 1);
  CHECK(big[0].anchor == 0);
  CHECK(big[0].members == std::vector<NodeId>{3, 6});

  // dominator by brute force: the deepest node whose subtree holds every member
  std::optional<NodeId> dom;
  for (NodeId x = 0; x < t.size(); ++x) {
    bool all_below = true;
    for (NodeId w : big[0].members) {
      std::optional<NodeId> y = w;
      while (y && *y != x) y = t.node(*y).parent;
      all_below = all_below && y.has_value();
    }
    if (all_below && (!dom || t.node(x).depth > t.node(*dom).depth)) dom = x;
  }
  const UpperBoundary ub = upper_boundary(*g, big);
  CHECK(ub.members == std::vector<NodeId>{*dom});
  CHECK(ub.members == std::vector<NodeId>{1});
  CHECK(ub.derived_from.size() == 1);

  try {
    upper_boundary(*g, all);
    FAIL("expected DegenerateSubsets");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateSubsets);
  }
  CHECK_THROWS_AS(upper_boundary(*g, {}), Error);
}

TEST_CASE("counterexample 1 subsets are degenerate everywhere") {
  PipelineRun r = ce1(Algorithm::Alg1);
  for (NodeId v = 1; v < r.graph->vertex_count(); ++v) {
    const auto subsets = all_reachable_subsets(*r.graph, v);
    try {
      upper_boundary(*r.graph, subsets);
      FAIL("expected DegenerateSubsets");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateSubsets);
    }
  }
}

TEST_CASE("single path without spans stops at layer 2") {
  VarSequence s{"a", {SeqItem::start(), SeqItem::present(0), SeqItem::present(1), SeqItem::end()}};
  PGraph p = build_pgraph(s);
  MergedTrie mt = merge_main_paths({p}, {"x", "y"});
  auto g = std::make_shared<const TrieLikeGraph>(overlay_spans(mt.trie, mt.node_map, {close_spans(p)}));
  LayeredGraph a1 = build_layered_alg1(g);
  LayeredGraph a3 = build_layered_alg3(g);
  CHECK(a1.layer_count() == 2);
  CHECK(signatures(a1) == signatures(a3));
  CHECK(a3.merge_events.empty());
}

TEST_CASE("layered invariants on random formulas") {
  std::mt19937 rng(3);
  for (int i = 0; i < 150; ++i) {
    const CnfFormula f = random_cnf(rng, 4, 3);
    for (Algorithm a : {Algorithm::Alg1, Algorithm::Alg3}) {
      PipelineRun r = run(f, OrderingPolicy::frequency(), a);
      check_invariants(r.layered);
      for (const auto& ev : r.layered.merge_events) {
        CHECK(ev.generators.size() >= 2);
        if (!ev.degenerate) {
          REQUIRE(ev.boundary.has_value());
          CHECK(ev.reason == "scoped-by-upper-boundary");
        }
      }
    }
  }
}

TEST_CASE("running example alg3 still answers 2") {
  PipelineOptions o;
  o.ordering = OrderingPolicy::lexical();
  o.algorithm = Algorithm::Alg3;
  PipelineRun a3 = run_pipeline(make_cnf(3, {{1, -2}, {-1, 3}}), o);
  o.algorithm = Algorithm::Alg1;
  PipelineRun a1 = run_pipeline(make_cnf(3, {{1, -2}, {-1, 3}}), o);
  CHECK(a3.answer.max_count == 2);
  CHECK(a1.answer.max_count == a3.answer.max_count);
  check_invariants(a3.layered);
}
