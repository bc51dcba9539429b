#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triesat/export.hpp"
#include "triesat/oracle.hpp"
#include "triesat/subset_finder.hpp"

namespace triesat {

struct CounterexampleSpec {
  std::string name;
  CnfFormula formula;
  OrderingPolicy ordering;
  std::size_t expected_pipeline = 0;
  std::size_t expected_oracle = 0;
  std::vector<Algorithm> algorithms;
};

inline constexpr std::size_t kFamilyCap = 12;

/// n copies of (!v1 | !v1).
CnfFormula family_formula(std::size_t n);
CounterexampleSpec family_spec(std::size_t n);
/// ce1, ce2, ce3, family(family_n), running.
std::vector<CounterexampleSpec> builtin_counterexamples(std::size_t family_n = 4);
/// Accepts ce1, ce2, ce3, running, family(N) and familyN.
std::optional<CounterexampleSpec> find_builtin(const std::string& name);

// A span edge in the witness used by conjunctions that do not own it.
struct SkipOver {
  InstanceId child = 0;
  InstanceId parent = 0;
  NodeId from = 0;
  NodeId to = 0;
  std::vector<std::string> owners;
  std::vector<std::string> carried;
  std::vector<std::string> foreign;
};

std::vector<SkipOver> diagnose_skip_over(const PipelineRun& run);

/// Parts of the witness assignment that two chosen leaves disagree on.
std::vector<std::string> witness_conflicts(const PipelineRun& run);

struct AlgorithmOutcome {
  Algorithm algorithm = Algorithm::Alg1;
  std::size_t pipeline = 0;
  std::size_t oracle = 0;
  std::size_t layers = 0;
  bool pipeline_ok = false;
  bool oracle_ok = false;
  std::size_t degenerate_merges = 0;
  std::size_t merges = 0;
  std::vector<SkipOver> diagnosis;
  PipelineRun run;
};

struct CounterexampleReport {
  CounterexampleSpec spec;
  std::vector<AlgorithmOutcome> outcomes;

  bool passed() const;
  Json to_json() const;
};

/// Runs every listed algorithm. With `strict` a missed expectation throws ExpectationFailed.
CounterexampleReport run_counterexample(const CounterexampleSpec& spec, bool strict = false,
                                        const OracleOptions& oracle = {});

struct FuzzParams {
  std::size_t min_n0 = 1;
  std::size_t max_n0 = 4;
  std::size_t max_m0 = 3;
  std::size_t orderings_per_formula = 8;
  double duplicate_literal_probability = 0.4;
  bool distinct_vars_only = false;
  std::vector<Algorithm> algorithms{Algorithm::Alg1};
  unsigned threads = 1;
};

struct Mismatch {
  std::size_t iteration = 0;
  CnfFormula formula;
  std::vector<std::string> ordering;  // full variable list, frequency-consistent
  Algorithm algorithm = Algorithm::Alg1;
  std::size_t pipeline_answer = 0;
  std::size_t oracle_answer = 0;
  std::vector<SkipOver> diagnosis;

  Json to_json() const;
};

/// Frequency classes in descending order, every permutation inside each class,
/// enumerated odometer-style starting from id order; at most `cap` results.
std::vector<std::vector<VarId>> tie_consistent_orderings(const std::vector<PaddedConjunction>& padded,
                                                         std::size_t variable_count, std::size_t cap);

CnfFormula random_formula(std::uint64_t seed, const FuzzParams& params);

std::vector<Mismatch> fuzz(std::uint64_t seed, std::size_t iterations, const FuzzParams& params);

/// Greedy local minimisation: drop clauses, drop unused variables, collapse
/// clauses to duplicated literals, fall back to the default ordering.
Mismatch shrink(const Mismatch& m);

struct BoundCheck {
  std::string name;
  std::uint64_t measured = 0;
  std::uint64_t bound = 0;
  bool pass() const { return measured <= bound; }
};

struct AuditReport {
  std::size_t n = 0, m = 0, n0 = 0, m0 = 0;
  bool n_is_2n0 = false;
  bool m_is_n0_plus_m0 = false;
  Algorithm algorithm = Algorithm::Alg1;
  std::vector<BoundCheck> bounds;
  std::map<std::string, OpCounters> counters;  // per stage
  std::uint64_t frame_n0_pow6 = 0;              // 216 * n0^6, context only

  bool passed() const;
  Json to_json() const;
};

AuditReport audit_bounds(const CnfFormula& f, const PipelineOptions& opts);

}  // namespace triesat
