#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "triesat/span_graph.hpp"

using namespace triesat;

namespace {

std::vector<VarSequence> running_sequences() {
  DnfFormula d = cnf_to_dnf(make_cnf(3, {{1, -2}, {-1, 3}}));
  return build_sequences(pad_missing(d), lexical_ordering(d.m()));
}

VarSequence from_mask(const std::vector<bool>& starred) {
  VarSequence s;
  s.label = "t";
  s.items.push_back(SeqItem::start());
  for (std::size_t i = 1; i + 1 < starred.size(); ++i) {
    const auto v = static_cast<VarId>(i - 1);
    s.items.push_back(starred[i] ? SeqItem::starred(v) : SeqItem::present(v));
  }
  s.items.push_back(SeqItem::end());
  return s;
}

}  // namespace

TEST_CASE("running example p-graph a") {
  PGraph a = build_pgraph(running_sequences()[0]);
  // #=0 v1=1 v2*=2 v3*=3 y1=4 y2*=5 $=6
  CHECK(a.spans == std::vector<Span>{{1, 3}, {2, 4}, {4, 6}});
  CHECK(a.main_edge_count() == 6);
  PStarGraph s = close_spans(a);
  CHECK(s.closed_spans == std::vector<Span>{{1, 3}, {1, 4}, {2, 4}, {4, 6}});
}

TEST_CASE("running example p-graph b is fully spanned") {
  PStarGraph b = close_spans(build_pgraph(running_sequences()[1]));
  REQUIRE(b.base.nodes.size() == 5);
  CHECK(b.closed_spans.size() == 6);
}

TEST_CASE("trivial and single span graphs") {
  VarSequence empty{"x", {SeqItem::start(), SeqItem::end()}};
  PGraph p = build_pgraph(empty);
  CHECK(p.nodes.size() == 2);
  CHECK(p.spans.empty());
  CHECK(close_spans(p).closed_spans.empty());

  VarSequence d{"d", {SeqItem::start(), SeqItem::starred(1), SeqItem::end()}};
  CHECK(build_pgraph(d).spans == std::vector<Span>{{0, 2}});
}

TEST_CASE("closure matches the characterization on every short sequence") {
  for (std::size_t len = 2; len <= 12; ++len) {
    const std::size_t interior = len - 2;
    for (unsigned mask = 0; mask < (1u << interior); ++mask) {
      std::vector<bool> starred(len, false);
      for (std::size_t i = 0; i < interior; ++i) starred[i + 1] = (mask >> i) & 1u;
      PStarGraph s = close_spans(build_pgraph(from_mask(starred)));
      std::set<std::pair<std::size_t, std::size_t>> got;
      for (const Span& sp : s.closed_spans) got.insert({sp.from, sp.to});
      CHECK(got == oracles::closure_by_definition(starred));
      const std::size_t m = interior;
      CHECK(s.closed_spans.size() <= (m + 2) * (m + 1) / 2);
      PStarGraph again = close_spans(s.base);
      CHECK(again.closed_spans == s.closed_spans);
    }
  }
}

TEST_CASE("closure keeps base spans and covers only starred items") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    const std::size_t len = 2 + rng() % 11;
    std::vector<bool> starred(len, false);
    for (std::size_t i = 1; i + 1 < len; ++i) starred[i] = rng() & 1u;
    PGraph p = build_pgraph(from_mask(starred));
    PStarGraph s = close_spans(p);
    for (const Span& b : p.spans) CHECK(std::binary_search(s.closed_spans.begin(), s.closed_spans.end(), b));
    for (const Span& sp : s.closed_spans) {
      CHECK(sp.to - sp.from >= 2);
      for (std::size_t k = sp.from + 1; k < sp.to; ++k) CHECK(p.nodes[k].is_starred());
    }
  }
}
