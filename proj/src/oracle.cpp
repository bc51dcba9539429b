#include "triesat/oracle.hpp"

#include <algorithm>
#include <thread>

#include "triesat/error.hpp"

namespace triesat {

namespace {

// Each term is two literals joined by OR (clauses) or AND (conjunctions).
struct Term {
  std::uint64_t bit[2];
  bool positive[2];
};

struct Best {
  std::size_t count = 0;
  std::uint64_t mask = 0;
  bool found = false;
};

Best scan(const std::vector<Term>& terms, bool disjunctive, std::uint64_t lo, std::uint64_t hi) {
  Best best;
  for (std::uint64_t mask = lo; mask < hi; ++mask) {
    std::size_t c = 0;
    for (const Term& t : terms) {
      const bool a = ((mask & t.bit[0]) != 0) == t.positive[0];
      const bool b = ((mask & t.bit[1]) != 0) == t.positive[1];
      c += disjunctive ? (a || b) : (a && b);
    }
    if (!best.found || c > best.count) best = {c, mask, true};
  }
  return best;
}

template <class T>
OracleResult solve(const std::vector<T>& items, std::size_t var_count, bool disjunctive, const OracleOptions& opts) {
  if (var_count > opts.cap || var_count >= 63) {
    throw Error(ErrorKind::TooManyVariables,
                std::to_string(var_count) + " variables exceeds the cap of " + std::to_string(opts.cap));
  }
  std::vector<Term> terms;
  for (const auto& it : items) {
    Term t{};
    for (int k = 0; k < 2; ++k) {
      t.bit[k] = 1ULL << (var_count - 1 - it.literals[k].var);
      t.positive[k] = it.literals[k].positive;
    }
    terms.push_back(t);
  }
  const std::uint64_t total = 1ULL << var_count;
  const unsigned workers = static_cast<unsigned>(std::clamp<std::uint64_t>(opts.threads, 1, std::max<std::uint64_t>(1, total / 4096)));
  std::vector<Best> parts(workers);
  if (workers == 1) {
    parts[0] = scan(terms, disjunctive, 0, total);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::uint64_t lo = w * chunk;
        parts[w] = scan(terms, disjunctive, lo, std::min(total, lo + chunk));
      });
    }
    for (auto& t : pool) t.join();
  }
  // Chunks are in mask order, so the first strict improvement keeps the least witness.
  Best best;
  for (const Best& b : parts) {
    if (b.found && (!best.found || b.count > best.count)) best = b;
  }
  OracleResult r;
  r.max_count = best.count;
  r.assignments_tried = total;
  r.witness.resize(var_count);
  for (std::size_t v = 0; v < var_count; ++v) r.witness[v] = (best.mask >> (var_count - 1 - v)) & 1ULL;
  return r;
}

}  // namespace

OracleResult oracle_max_sat(const CnfFormula& f, const OracleOptions& opts) {
  return solve(f.clauses, f.m0(), true, opts);
}

OracleResult oracle_max_dnf(const DnfFormula& d, const OracleOptions& opts) {
  return solve(d.conjunctions, d.m(), false, opts);
}

bool decide_2maxsat(const CnfFormula& f, std::size_t k, const OracleOptions& opts) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  return oracle_max_sat(f, opts).max_count >= k;
}

}  // namespace triesat
