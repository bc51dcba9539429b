#pragma once

#include <memory>
#include <string>
#include <vector>

#include "triesat/counters.hpp"
#include "triesat/formula.hpp"
#include "triesat/layered.hpp"
#include "triesat/sequence.hpp"
#include "triesat/span_graph.hpp"
#include "triesat/trie_graph.hpp"

namespace triesat {

struct RootedSubgraph {
  InstanceId root = 0;
  std::vector<InstanceId> instances;      // sorted
  std::vector<std::string> leaf_labels;   // conjunction order
  Assignment implied_assignment;          // no cross-branch consistency check, on purpose
  std::vector<std::size_t> expansions;    // generating expansion chosen at each merged instance

  std::size_t count() const { return leaf_labels.size(); }
};

struct PipelineAnswer {
  std::size_t max_count = 0;
  RootedSubgraph witness;
  std::vector<std::pair<InstanceId, std::size_t>> per_subgraph;
  Algorithm mode = Algorithm::Alg1;
  GlobalOrdering ordering_used;
};

struct SearchLimits {
  std::uint64_t max_states = 1ULL << 22;
};

/// One subgraph per parentless instance. Below an instance generated by
/// several expansions (only possible after Algorithm 3 merges) exactly one
/// expansion is followed; the returned subgraph is the choice with the most
/// leaf labels, earliest expansion first on ties.
std::vector<RootedSubgraph> enumerate_rooted_subgraphs(const LayeredGraph& lg, SearchLimits limits = {},
                                                       OpCounters* counters = nullptr);

std::vector<std::string> satisfied_conjunctions(const RootedSubgraph& sg);

PipelineAnswer find_subset_alg2(const LayeredGraph& lg, SearchLimits limits = {}, OpCounters* counters = nullptr);

enum class OrderingKind { Frequency, Explicit, Lexical };

struct OrderingPolicy {
  OrderingKind kind = OrderingKind::Frequency;
  TieBreak tie_break = TieBreak::FirstAppearance;
  std::vector<std::string> names;  // ExplicitList tie-break or Explicit kind

  static OrderingPolicy frequency(TieBreak t = TieBreak::FirstAppearance) { return {OrderingKind::Frequency, t, {}}; }
  static OrderingPolicy lexical() { return {OrderingKind::Lexical, TieBreak::VariableId, {}}; }
  /// Frequency order with ties broken by the given list, e.g. "y1>y2>v1".
  static OrderingPolicy tie_list(std::string_view spec);
  static OrderingPolicy forced(std::string_view spec);
  /// "frequency", "frequency:id", "lexical", "explicit:A>B", or a bare tie list.
  /// Accepts everything describe() prints.
  static OrderingPolicy parse(std::string_view text);

  std::string describe() const;
};

GlobalOrdering resolve_ordering(const OrderingPolicy& policy, const std::vector<PaddedConjunction>& padded,
                                const std::vector<Variable>& vars);

struct PipelineOptions {
  OrderingPolicy ordering;
  Algorithm algorithm = Algorithm::Alg1;
  SearchLimits limits;
  bool find_answer = true;  // false stops after the layered graph
};

// Every intermediate structure, kept for export and auditing.
struct PipelineRun {
  CnfFormula cnf;
  DnfFormula dnf;
  std::vector<PaddedConjunction> padded;
  GlobalOrdering ordering;
  std::vector<VarSequence> sequences;
  std::vector<PGraph> pgraphs;
  std::vector<PStarGraph> pstars;
  std::shared_ptr<const TrieLikeGraph> graph;
  LayeredGraph layered;
  PipelineAnswer answer;
  OpCounters closure_counters;
  OpCounters trie_counters;
  OpCounters layered_counters;
  OpCounters subset_counters;
};

PipelineRun run_pipeline(const CnfFormula& f, const PipelineOptions& opts);

}  // namespace triesat
