#pragma once

#include <cstdint>

#include "triesat/formula.hpp"

namespace triesat {

struct OracleResult {
  std::size_t max_count = 0;
  Assignment witness;  // lexicographically least among the maximisers (v1 most significant)
  std::uint64_t assignments_tried = 0;
};

struct OracleOptions {
  std::size_t cap = 24;
  unsigned threads = 1;
};

OracleResult oracle_max_sat(const CnfFormula& f, const OracleOptions& opts = {});
OracleResult oracle_max_dnf(const DnfFormula& d, const OracleOptions& opts = {});
bool decide_2maxsat(const CnfFormula& f, std::size_t k, const OracleOptions& opts = {});

}  // namespace triesat
