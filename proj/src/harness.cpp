#include "triesat/harness.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include "triesat/error.hpp"

namespace triesat {

CnfFormula family_formula(std::size_t n) {
  if (n < 1 || n > kFamilyCap) {
    throw Error(ErrorKind::InvalidArgument, "family size must be in [1, " + std::to_string(kFamilyCap) + "]");
  }
  return make_cnf(1, std::vector<std::array<int, 2>>(n, {-1, -1}));
}

CounterexampleSpec family_spec(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "family size must be at least 2");
  std::string order;
  for (std::size_t i = 1; i <= n; ++i) order += "y" + std::to_string(i) + ">";
  order += "v1";
  return {"family(" + std::to_string(n) + ")",
          family_formula(n),
          OrderingPolicy::tie_list(order),
          n + 1,
          n,
          {Algorithm::Alg1, Algorithm::Alg3}};
}

std::vector<CounterexampleSpec> builtin_counterexamples(std::size_t family_n) {
  const std::vector<Algorithm> both{Algorithm::Alg1, Algorithm::Alg3};
  std::vector<CounterexampleSpec> out;
  out.push_back({"ce1", make_cnf(1, {{-1, -1}, {-1, -1}}), OrderingPolicy::tie_list("y1>y2>v1"), 3, 2, both});
  out.push_back({"ce2", make_cnf(1, {{1, 1}, {1, 1}}), OrderingPolicy::tie_list("v1>y1>y2"), 3, 2, both});
  out.push_back({"ce3", make_cnf(1, {{-1, -1}, {1, 1}}), OrderingPolicy::tie_list("y2>y1>v1"), 2, 1, both});
  out.push_back(family_spec(family_n));
  out.push_back({"running", make_cnf(3, {{1, -2}, {-1, 3}}), OrderingPolicy::lexical(), 2, 2, both});
  return out;
}

std::optional<CounterexampleSpec> find_builtin(const std::string& name) {
  for (const char* fixed : {"ce1", "ce2", "ce3", "running"}) {
    if (name == fixed) {
      for (auto& s : builtin_counterexamples()) {
        if (s.name == name) return s;
      }
    }
  }
  std::string digits;
  if (name.rfind("family(", 0) == 0 && name.size() > 8 && name.back() == ')') {
    digits = name.substr(7, name.size() - 8);
  } else if (name.rfind("family", 0) == 0) {
    digits = name.substr(6);
  } else {
    return std::nullopt;
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 3) return std::nullopt;
  return family_spec(std::stoul(digits));
}

namespace {

std::vector<std::string> sorted_union(std::vector<std::string> v) {
  std::sort(v.begin(), v.end(), [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<SkipOver> diagnose_skip_over(const PipelineRun& run) {
  const LayeredGraph& lg = run.layered;
  const TrieLikeGraph& g = *run.graph;
  const auto& wit = run.answer.witness.instances;
  std::set<InstanceId> in(wit.begin(), wit.end());
  std::vector<SkipOver> out;
  for (const auto& e : lg.edges) {
    if (!e.via_span || !in.count(e.child) || !in.count(e.parent)) continue;
    std::vector<std::string> carried;
    std::vector<InstanceId> stack{e.child};
    std::set<InstanceId> seen{e.child};
    while (!stack.empty()) {
      InstanceId x = stack.back();
      stack.pop_back();
      const auto& labels = g.trie().node(lg.instances[x].trie_node).conjunction_labels;
      carried.insert(carried.end(), labels.begin(), labels.end());
      for (const auto& f : lg.edges) {
        if (f.parent == x && in.count(f.child) && seen.insert(f.child).second) stack.push_back(f.child);
      }
    }
    SkipOver s;
    s.child = e.child;
    s.parent = e.parent;
    s.from = lg.instances[e.child].trie_node;
    s.to = lg.instances[e.parent].trie_node;
    if (const SpanEdge* span = g.find_span(s.from, s.to)) s.owners = span->labels;
    s.carried = sorted_union(carried);
    for (const auto& c : s.carried) {
      if (std::find(s.owners.begin(), s.owners.end(), c) == s.owners.end()) s.foreign.push_back(c);
    }
    if (!s.foreign.empty()) out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> witness_conflicts(const PipelineRun& run) {
  std::map<VarId, std::set<bool>> wanted;
  for (const auto& label : run.answer.witness.leaf_labels) {
    for (const auto& c : run.dnf.conjunctions) {
      if (c.label != label) continue;
      for (const auto& lit : c.literals) wanted[lit.var].insert(lit.positive);
    }
  }
  std::vector<std::string> out;
  for (const auto& [v, polarities] : wanted) {
    if (polarities.size() > 1) out.push_back(run.dnf.variables[v].name);
  }
  return out;
}

namespace {

Json skip_json(const std::vector<SkipOver>& d) {
  Json arr = Json::array();
  for (const auto& s : d) {
    arr.push_back({{"span", Trie::display_id(s.from) + "->" + Trie::display_id(s.to)},
                   {"owners", s.owners},
                   {"carried", s.carried},
                   {"foreign", s.foreign}});
  }
  return arr;
}

}  // namespace

bool CounterexampleReport::passed() const {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [](const AlgorithmOutcome& o) { return o.pipeline_ok && o.oracle_ok; });
}

Json CounterexampleReport::to_json() const {
  Json outs = Json::array();
  for (const auto& o : outcomes) {
    outs.push_back({{"algorithm", to_string(o.algorithm)},
                    {"pipeline", o.pipeline},
                    {"oracle", o.oracle},
                    {"layers", o.layers},
                    {"pipeline_ok", o.pipeline_ok},
                    {"oracle_ok", o.oracle_ok},
                    {"mismatch", o.pipeline != o.oracle},
                    {"merges", o.merges},
                    {"degenerate_merges", o.degenerate_merges},
                    {"witness", answer_json(o.run)},
                    {"witness_conflicts", witness_conflicts(o.run)},
                    {"skip_over", skip_json(o.diagnosis)}});
  }
  return {{"name", spec.name},
          {"formula", render_cnf(spec.formula)},
          {"ordering", spec.ordering.describe()},
          {"expected_pipeline", spec.expected_pipeline},
          {"expected_oracle", spec.expected_oracle},
          {"passed", passed()},
          {"outcomes", outs}};
}

CounterexampleReport run_counterexample(const CounterexampleSpec& spec, bool strict, const OracleOptions& oracle) {
  CounterexampleReport rep;
  rep.spec = spec;
  const std::size_t truth = oracle_max_sat(spec.formula, oracle).max_count;
  for (Algorithm a : spec.algorithms) {
    AlgorithmOutcome o;
    o.algorithm = a;
    o.run = run_pipeline(spec.formula, {spec.ordering, a, {}});
    o.pipeline = o.run.answer.max_count;
    o.oracle = truth;
    o.layers = o.run.layered.layer_count();
    o.pipeline_ok = o.pipeline == spec.expected_pipeline;
    o.oracle_ok = o.oracle == spec.expected_oracle;
    o.merges = o.run.layered.merge_events.size();
    o.degenerate_merges = static_cast<std::size_t>(std::count_if(
        o.run.layered.merge_events.begin(), o.run.layered.merge_events.end(), [](const MergeEvent& e) { return e.degenerate; }));
    o.diagnosis = diagnose_skip_over(o.run);
    rep.outcomes.push_back(std::move(o));
  }
  if (strict && !rep.passed()) {
    std::string msg = spec.name + ":";
    for (const auto& o : rep.outcomes) {
      msg += std::string(" ") + to_string(o.algorithm) + " pipeline " + std::to_string(o.pipeline) + " (expected " +
             std::to_string(spec.expected_pipeline) + "), oracle " + std::to_string(o.oracle) + " (expected " +
             std::to_string(spec.expected_oracle) + ")";
    }
    throw Error(ErrorKind::ExpectationFailed, msg);
  }
  return rep;
}

Json Mismatch::to_json() const {
  std::string ord;
  for (std::size_t i = 0; i < ordering.size(); ++i) ord += (i ? ">" : "") + ordering[i];
  return {{"iteration", iteration},
          {"formula", render_cnf(formula)},
          {"ordering", ord},
          {"algorithm", triesat::to_string(algorithm)},
          {"pipeline", pipeline_answer},
          {"oracle", oracle_answer},
          {"skip_over", skip_json(diagnosis)}};
}

std::vector<std::vector<VarId>> tie_consistent_orderings(const std::vector<PaddedConjunction>& padded,
                                                         std::size_t variable_count, std::size_t cap) {
  std::vector<std::vector<VarId>> out;
  if (cap == 0) return out;
  const std::vector<std::size_t> freq = variable_frequencies(padded);
  std::map<std::size_t, std::vector<VarId>, std::greater<>> classes;
  for (VarId v = 0; v < variable_count; ++v) classes[v < freq.size() ? freq[v] : 0].push_back(v);
  std::vector<std::vector<VarId>> perm;
  for (auto& [f, vars] : classes) perm.push_back(vars);
  while (true) {
    std::vector<VarId> order;
    for (const auto& p : perm) order.insert(order.end(), p.begin(), p.end());
    out.push_back(std::move(order));
    if (out.size() >= cap) break;
    // Odometer: advance the last class first; a wrapped class resets to id order.
    std::size_t k = perm.size();
    bool advanced = false;
    while (k > 0) {
      --k;
      if (std::next_permutation(perm[k].begin(), perm[k].end())) {
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Small explicit generator so streams do not depend on the standard library's distributions.
struct Rng {
  std::uint64_t state;
  std::uint64_t next() { return state = splitmix64(state); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  double unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }
};

std::vector<std::string> names_of(const std::vector<VarId>& order, const std::vector<Variable>& vars) {
  std::vector<std::string> out;
  for (VarId v : order) out.push_back(vars[v].name);
  return out;
}

struct Verdict {
  std::size_t pipeline = 0;
  std::size_t oracle = 0;
  std::vector<SkipOver> diagnosis;
};

std::optional<Verdict> evaluate(const CnfFormula& f, const std::vector<std::string>& ordering, Algorithm a) {
  OrderingPolicy pol{OrderingKind::Frequency, TieBreak::ExplicitList, ordering};
  try {
    PipelineRun run = run_pipeline(f, {pol, a, {}});
    Verdict v{run.answer.max_count, oracle_max_sat(f).max_count, {}};
    if (v.pipeline != v.oracle) v.diagnosis = diagnose_skip_over(run);
    return v;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ExplicitOrderContradictsFrequency || e.kind() == ErrorKind::UnknownVariableName ||
        e.kind() == ErrorKind::IncompleteExplicitOrder) {
      return std::nullopt;
    }
    throw;
  }
}

std::vector<Mismatch> fuzz_one(std::uint64_t seed, std::size_t iteration, const FuzzParams& params) {
  const CnfFormula f = random_formula(splitmix64(seed ^ splitmix64(iteration)), params);
  const DnfFormula d = cnf_to_dnf(f);
  const auto padded = pad_missing(d);
  const std::size_t truth = oracle_max_sat(f).max_count;
  std::vector<Mismatch> out;
  for (const auto& order : tie_consistent_orderings(padded, d.m(), params.orderings_per_formula)) {
    const auto names = names_of(order, d.variables);
    for (Algorithm a : params.algorithms) {
      PipelineRun run = run_pipeline(f, {{OrderingKind::Frequency, TieBreak::ExplicitList, names}, a, {}});
      if (run.answer.max_count == truth) continue;
      out.push_back({iteration, f, names, a, run.answer.max_count, truth, diagnose_skip_over(run)});
    }
  }
  return out;
}

}  // namespace

CnfFormula random_formula(std::uint64_t seed, const FuzzParams& params) {
  Rng rng{seed};
  const std::size_t lo_m = params.distinct_vars_only ? 2 : 1;
  if (params.max_m0 < lo_m || params.max_n0 < params.min_n0 || params.min_n0 < 1) {
    throw Error(ErrorKind::InvalidArgument, "fuzz parameters leave no formula to generate");
  }
  const std::size_t n0 = params.min_n0 + rng.below(params.max_n0 - params.min_n0 + 1);
  const std::size_t m0 = lo_m + rng.below(params.max_m0 - lo_m + 1);
  std::vector<std::array<int, 2>> clauses;
  for (std::size_t i = 0; i < n0; ++i) {
    const int v1 = static_cast<int>(rng.below(m0)) + 1;
    const int l1 = rng.below(2) ? v1 : -v1;
    int l2;
    if (!params.distinct_vars_only && rng.unit() < params.duplicate_literal_probability) {
      l2 = l1;
    } else {
      int v2 = static_cast<int>(rng.below(m0)) + 1;
      if (params.distinct_vars_only) {
        v2 = static_cast<int>(rng.below(m0 - 1)) + 1;
        if (v2 >= v1) ++v2;
      }
      l2 = rng.below(2) ? v2 : -v2;
    }
    clauses.push_back({l1, l2});
  }
  return make_cnf(m0, clauses);
}

std::vector<Mismatch> fuzz(std::uint64_t seed, std::size_t iterations, const FuzzParams& params) {
  std::vector<std::vector<Mismatch>> per(iterations);
  const unsigned workers = std::max(1u, std::min<unsigned>(params.threads, static_cast<unsigned>(std::max<std::size_t>(1, iterations))));
  if (workers == 1) {
    for (std::size_t i = 0; i < iterations; ++i) per[i] = fuzz_one(seed, i, params);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < iterations; i += workers) per[i] = fuzz_one(seed, i, params);
      });
    }
    for (auto& t : pool) t.join();
  }
  std::vector<Mismatch> out;
  for (auto& v : per) {
    for (auto& m : v) out.push_back(std::move(m));
  }
  return out;
}

namespace {

std::vector<std::array<int, 2>> clause_ints(const CnfFormula& f) {
  std::vector<std::array<int, 2>> out;
  for (const auto& c : f.clauses) {
    std::array<int, 2> a{};
    for (int k = 0; k < 2; ++k) {
      const int v = static_cast<int>(c.literals[k].var) + 1;
      a[k] = c.literals[k].positive ? v : -v;
    }
    out.push_back(a);
  }
  return out;
}

// Renames "prefix{k}" for k > removed down by one and drops "prefix{removed}".
std::vector<std::string> drop_index(const std::vector<std::string>& names, char prefix, std::size_t removed) {
  std::vector<std::string> out;
  for (const auto& n : names) {
    if (n.size() > 1 && n[0] == prefix) {
      const std::size_t k = std::stoul(n.substr(1));
      if (k == removed) continue;
      out.push_back(std::string(1, prefix) + std::to_string(k > removed ? k - 1 : k));
    } else {
      out.push_back(n);
    }
  }
  return out;
}

struct Candidate {
  CnfFormula formula;
  std::vector<std::string> ordering;
};

bool try_accept(Mismatch& cur, const Candidate& c) {
  auto v = evaluate(c.formula, c.ordering, cur.algorithm);
  if (!v || v->pipeline == v->oracle) return false;
  cur.formula = c.formula;
  cur.ordering = c.ordering;
  cur.pipeline_answer = v->pipeline;
  cur.oracle_answer = v->oracle;
  cur.diagnosis = v->diagnosis;
  return true;
}

// Structural candidates keep the adapted ordering if still valid, otherwise try the tie-consistent ones.
bool try_structural(Mismatch& cur, const CnfFormula& f, const std::vector<std::string>& adapted) {
  if (try_accept(cur, {f, adapted})) return true;
  const DnfFormula d = cnf_to_dnf(f);
  for (const auto& order : tie_consistent_orderings(pad_missing(d), d.m(), 8)) {
    if (try_accept(cur, {f, names_of(order, d.variables)})) return true;
  }
  return false;
}

}  // namespace

Mismatch shrink(const Mismatch& m) {
  Mismatch cur = m;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto clauses = clause_ints(cur.formula);
    const std::size_t m0 = cur.formula.m0();

    for (std::size_t i = clauses.size(); i-- > 0 && !changed && clauses.size() > 1;) {
      auto fewer = clauses;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      changed = try_structural(cur, make_cnf(m0, fewer), drop_index(cur.ordering, 'y', i + 1));
    }
    if (changed) continue;

    for (std::size_t v = m0; v >= 1 && !changed && m0 > 1; --v) {
      const bool used = std::any_of(clauses.begin(), clauses.end(), [&](const auto& c) {
        return std::abs(c[0]) == static_cast<int>(v) || std::abs(c[1]) == static_cast<int>(v);
      });
      if (used) continue;
      auto renumbered = clauses;
      for (auto& c : renumbered) {
        for (int& lit : c) {
          if (std::abs(lit) > static_cast<int>(v)) lit += lit > 0 ? -1 : 1;
        }
      }
      changed = try_structural(cur, make_cnf(m0 - 1, renumbered), drop_index(cur.ordering, 'v', v));
    }
    if (changed) continue;

    for (std::size_t i = 0; i < clauses.size() && !changed; ++i) {
      if (clauses[i][0] == clauses[i][1]) continue;
      for (int k = 0; k < 2 && !changed; ++k) {
        auto collapsed = clauses;
        collapsed[i] = {clauses[i][k], clauses[i][k]};
        changed = try_structural(cur, make_cnf(m0, collapsed), cur.ordering);
      }
    }
    if (changed) continue;

    const DnfFormula d = cnf_to_dnf(cur.formula);
    const auto def = names_of(frequency_ordering(pad_missing(d), TieBreak::FirstAppearance).order(), d.variables);
    if (def != cur.ordering) changed = try_accept(cur, {cur.formula, def});
  }
  return cur;
}

bool AuditReport::passed() const {
  return std::all_of(bounds.begin(), bounds.end(), [](const BoundCheck& b) { return b.pass(); });
}

Json AuditReport::to_json() const {
  Json b = Json::array();
  for (const auto& c : bounds) {
    b.push_back({{"name", c.name}, {"measured", c.measured}, {"bound", c.bound}, {"pass", c.pass()}});
  }
  Json ctr = Json::object();
  for (const auto& [stage, c] : counters) ctr[stage] = triesat::to_json(c);
  return {{"n", n},
          {"m", m},
          {"n0", n0},
          {"m0", m0},
          {"n_equals_2n0", n_is_2n0},
          {"m_equals_n0_plus_m0", m_is_n0_plus_m0},
          {"algorithm", to_string(algorithm)},
          {"bounds", b},
          {"passed", passed()},
          {"counters", ctr},
          {"frame_216_n0_pow6", frame_n0_pow6}};
}

AuditReport audit_bounds(const CnfFormula& f, const PipelineOptions& opts) {
  PipelineOptions o = opts;
  o.find_answer = false;
  PipelineRun run = run_pipeline(f, o);
  AuditReport r;
  r.n = run.dnf.n();
  r.m = run.dnf.m();
  r.n0 = f.n0();
  r.m0 = f.m0();
  r.n_is_2n0 = r.n == 2 * r.n0;
  r.m_is_n0_plus_m0 = r.m == r.n0 + r.m0;
  r.algorithm = opts.algorithm;
  const std::uint64_t n = r.n, m = r.m;

  std::uint64_t max_spans = 0;
  for (const auto& p : run.pstars) max_spans = std::max<std::uint64_t>(max_spans, p.closed_spans.size());
  const std::uint64_t trie_vertices = run.graph->vertex_count();
  r.bounds = {
      {"pstar_spans_per_graph", max_spans, (m + 2) * (m + 1) / 2},
      {"trie_vertices", trie_vertices, n * (m + 2) - 1},
      {"trie_edges", run.graph->trie().edge_count(), (m + 1) * n},
      {"trie_like_vertices", trie_vertices, n * (m + 2) - 1},
      {"trie_like_edges", run.graph->edge_count(), (m + 2) * (m + 1) * n / 2},
      {"layered_vertices", run.layered.instances.size(), (n * (m + 2) - 1) * (m + 2)},
      {"layered_edges", run.layered.edges.size(), (m + 2) * (m + 1) * (m + 1) * n / 2},
  };
  r.counters["span_closure"] = run.closure_counters;
  r.counters["trie_like"] = run.trie_counters;
  r.counters["layered"] = run.layered_counters;
  std::uint64_t p6 = 1;
  for (int i = 0; i < 6; ++i) p6 *= r.n0;
  r.frame_n0_pow6 = 216 * p6;
  return r;
}

}  // namespace triesat
