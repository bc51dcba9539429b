#include "triesat/subset_finder.hpp"

#include <algorithm>
#include <map>

#include "triesat/error.hpp"

namespace triesat {

namespace {

class LabelSet {
 public:
  explicit LabelSet(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= (1ULL << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1ULL; }
  void unite(const LabelSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Option {
  std::size_t expansion;
  std::vector<InstanceId> children;
};

struct Search {
  const LayeredGraph& lg;
  std::size_t label_count;
  std::vector<LabelSet> leaf;      // labels on a layer-1 instance
  std::vector<LabelSet> closure;   // every label reachable below, ignoring choices
  std::vector<std::vector<Option>> options;
  SearchLimits limits;
  std::uint64_t states = 0;

  std::vector<InstanceId> queue;
  std::vector<char> included;
  std::vector<std::size_t> chosen;

  std::size_t best_count = 0;
  bool have_best = false;
  std::vector<InstanceId> best_instances;
  std::vector<std::size_t> best_chosen;
  LabelSet best_labels;

  Search(const LayeredGraph& g, SearchLimits lim) : lg(g), limits(lim) {
    const TrieLikeGraph& src = *lg.source;
    label_count = src.node_map().labels.size();
    const std::size_t n = lg.instances.size();
    leaf.assign(n, LabelSet(label_count));
    closure.assign(n, LabelSet(label_count));
    options.resize(n);
    included.assign(n, 0);
    for (const auto& inst : lg.instances) {
      for (const auto& l : src.trie().node(inst.trie_node).conjunction_labels) {
        if (auto idx = src.node_map().index_of(l)) leaf[inst.id].set(*idx);
      }
    }
    std::map<std::pair<InstanceId, std::size_t>, std::vector<InstanceId>> grouped;
    for (const auto& e : lg.edges) grouped[{e.parent, e.expansion}].push_back(e.child);
    for (auto& [key, children] : grouped) options[key.first].push_back({key.second, std::move(children)});
    // Children always have smaller layer, so a layer sweep fills the closure bottom-up.
    for (const auto& layer : lg.layers) {
      for (InstanceId id : layer) {
        closure[id] = leaf[id];
        for (const auto& opt : options[id]) {
          for (InstanceId c : opt.children) closure[id].unite(closure[c]);
        }
      }
    }
  }

  void go(std::size_t head, LabelSet acc) {
    if (++states > limits.max_states) {
      throw Error(ErrorKind::SearchBudgetExceeded,
                  "rooted-subgraph search exceeded " + std::to_string(limits.max_states) + " states");
    }
    if (have_best) {
      LabelSet bound = acc;
      for (std::size_t i = head; i < queue.size(); ++i) bound.unite(closure[queue[i]]);
      if (bound.count() <= best_count) return;
    }
    if (head == queue.size()) {
      const std::size_t c = acc.count();
      if (!have_best || c > best_count) {
        have_best = true;
        best_count = c;
        best_instances = queue;
        best_chosen = chosen;
        best_labels = acc;
      }
      return;
    }
    const InstanceId x = queue[head];
    const auto& opts = options[x];
    if (opts.empty()) {
      acc.unite(leaf[x]);
      go(head + 1, acc);
      return;
    }
    for (const auto& opt : opts) {
      const std::size_t before = queue.size();
      for (InstanceId c : opt.children) {
        if (!included[c]) {
          included[c] = 1;
          queue.push_back(c);
        }
      }
      if (opts.size() > 1) chosen.push_back(opt.expansion);
      go(head + 1, acc);
      if (opts.size() > 1) chosen.pop_back();
      while (queue.size() > before) {
        included[queue.back()] = 0;
        queue.pop_back();
      }
    }
  }

  RootedSubgraph run(InstanceId root) {
    have_best = false;
    best_count = 0;
    queue = {root};
    std::fill(included.begin(), included.end(), 0);
    included[root] = 1;
    chosen.clear();
    go(0, LabelSet(label_count));

    const TrieLikeGraph& src = *lg.source;
    RootedSubgraph sg;
    sg.root = root;
    sg.instances = best_instances;
    std::sort(sg.instances.begin(), sg.instances.end());
    sg.expansions = best_chosen;
    for (std::size_t i = 0; i < label_count; ++i) {
      if (best_labels.test(i)) sg.leaf_labels.push_back(src.node_map().labels[i]);
    }
    sg.implied_assignment.assign(src.trie().variable_names().size(), false);
    for (InstanceId id : sg.instances) {
      const NodeLabel& l = src.trie().node(lg.instances[id].trie_node).label;
      if (l.tag == ItemTag::Var) sg.implied_assignment.at(*l.var) = true;
    }
    return sg;
  }
};

}  // namespace

std::vector<RootedSubgraph> enumerate_rooted_subgraphs(const LayeredGraph& lg, SearchLimits limits,
                                                       OpCounters* counters) {
  if (!lg.source) throw Error(ErrorKind::InvalidArgument, "layered graph has no source graph");
  std::vector<char> has_parent(lg.instances.size(), 0);
  for (const auto& e : lg.edges) has_parent[e.child] = 1;
  Search s(lg, limits);
  std::vector<RootedSubgraph> out;
  for (const auto& inst : lg.instances) {
    if (has_parent[inst.id]) continue;
    out.push_back(s.run(inst.id));
  }
  bump(counters, "rooted_subgraphs", out.size());
  bump(counters, "subgraph_search_states", s.states);
  return out;
}

std::vector<std::string> satisfied_conjunctions(const RootedSubgraph& sg) { return sg.leaf_labels; }

PipelineAnswer find_subset_alg2(const LayeredGraph& lg, SearchLimits limits, OpCounters* counters) {
  if (lg.instances.empty()) throw Error(ErrorKind::EmptyGraph, "layered graph has no instances");
  PipelineAnswer ans;
  ans.mode = lg.mode;
  bool first = true;
  for (auto& sg : enumerate_rooted_subgraphs(lg, limits, counters)) {
    ans.per_subgraph.emplace_back(sg.root, sg.count());
    if (first || sg.count() > ans.max_count) {
      ans.max_count = sg.count();
      ans.witness = std::move(sg);
      first = false;
    }
  }
  return ans;
}

OrderingPolicy OrderingPolicy::tie_list(std::string_view spec) {
  return {OrderingKind::Frequency, TieBreak::ExplicitList, parse_ordering(spec)};
}

OrderingPolicy OrderingPolicy::forced(std::string_view spec) {
  return {OrderingKind::Explicit, TieBreak::ExplicitList, parse_ordering(spec)};
}

OrderingPolicy OrderingPolicy::parse(std::string_view text) {
  if (text == "frequency" || text == "frequency:first" || text == "frequency/first_appearance") return frequency();
  if (text == "frequency:id" || text == "frequency/variable_id") return frequency(TieBreak::VariableId);
  if (text == "lexical") return lexical();
  if (text.substr(0, 9) == "explicit:") return forced(text.substr(9));
  if (text.substr(0, 10) == "frequency:") return tie_list(text.substr(10));
  return tie_list(text);
}

std::string OrderingPolicy::describe() const {
  auto joined = [&] {
    std::string s;
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ">" : "") + names[i];
    return s;
  };
  switch (kind) {
    case OrderingKind::Lexical: return "lexical";
    case OrderingKind::Explicit: return "explicit:" + joined();
    case OrderingKind::Frequency:
      if (tie_break == TieBreak::ExplicitList) return "frequency:" + joined();
      return tie_break == TieBreak::VariableId ? "frequency/variable_id" : "frequency/first_appearance";
  }
  return "?";
}

GlobalOrdering resolve_ordering(const OrderingPolicy& policy, const std::vector<PaddedConjunction>& padded,
                                const std::vector<Variable>& vars) {
  switch (policy.kind) {
    case OrderingKind::Lexical: return lexical_ordering(vars.size());
    case OrderingKind::Explicit: return explicit_ordering(resolve_names(policy.names, vars), vars.size());
    case OrderingKind::Frequency:
      if (policy.tie_break == TieBreak::ExplicitList) {
        return frequency_ordering(padded, policy.tie_break, resolve_names(policy.names, vars));
      }
      return frequency_ordering(padded, policy.tie_break);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown ordering kind");
}

PipelineRun run_pipeline(const CnfFormula& f, const PipelineOptions& opts) {
  PipelineRun run;
  run.cnf = f;
  run.dnf = cnf_to_dnf(f);
  run.padded = pad_missing(run.dnf);
  run.ordering = resolve_ordering(opts.ordering, run.padded, run.dnf.variables);
  run.sequences = build_sequences(run.padded, run.ordering);
  for (const auto& s : run.sequences) {
    run.pgraphs.push_back(build_pgraph(s));
    run.pstars.push_back(close_spans(run.pgraphs.back(), &run.closure_counters));
  }
  std::vector<std::string> names;
  for (const auto& v : run.dnf.variables) names.push_back(v.name);
  MergedTrie merged = merge_main_paths(run.pgraphs, std::move(names), &run.trie_counters);
  run.graph = std::make_shared<const TrieLikeGraph>(
      overlay_spans(std::move(merged.trie), std::move(merged.node_map), run.pstars, &run.trie_counters));
  run.layered = build_layered(run.graph, opts.algorithm, &run.layered_counters);
  if (opts.find_answer) run.answer = find_subset_alg2(run.layered, opts.limits, &run.subset_counters);
  run.answer.mode = opts.algorithm;
  run.answer.ordering_used = run.ordering;
  return run;
}

}  // namespace triesat
