#include <doctest.h>

#include "oracles.hpp"
#include "triesat/error.hpp"
#include "triesat/formula.hpp"

using namespace triesat;

namespace {

ErrorKind parse_error(const char* text) {
  try {
    parse_cnf(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return ErrorKind::InvalidArgument;
}

Assignment bits(std::initializer_list<int> v) {
  Assignment a;
  for (int x : v) a.push_back(x != 0);
  return a;
}

}  // namespace

TEST_CASE("parse three clause formula") {
  CnfFormula f = parse_cnf("p cnf 3 3\n1 2 0\n2 -3 0\n3 -1 0\n");
  CHECK(f.n0() == 3);
  CHECK(f.m0() == 3);
  CHECK(f.clauses[1].literals[1] == Literal{2, false});
  CHECK(f.clauses[2].index == 2);
}

TEST_CASE("parse duplicated negative clauses") {
  CnfFormula f = parse_cnf("c two copies\np cnf 1 2\n-1 -1 0\n-1 -1 0\n");
  CHECK(f.n0() == 2);
  CHECK(f.m0() == 1);
  CHECK(f.clauses[0].literals[0] == f.clauses[0].literals[1]);
}

TEST_CASE("single literal clause is doubled") {
  CnfFormula f = parse_cnf("p cnf 1 1\n1 0\n");
  REQUIRE(f.n0() == 1);
  CHECK(f.clauses[0].literals[0] == Literal{0, true});
  CHECK(f.clauses[0].literals[1] == Literal{0, true});
}

TEST_CASE("parse errors") {
  CHECK(parse_error("1 2 0\n") == ErrorKind::MalformedHeader);
  CHECK(parse_error("p cnf 3 1\n1 2 3 0\n") == ErrorKind::ClauseArity);
  CHECK(parse_error("p cnf 2 1\n1 3 0\n") == ErrorKind::UnknownVariable);
  CHECK(parse_error("p cnf 2 0\n") == ErrorKind::EmptyFormula);
  CHECK(parse_error("p cnf 2 2\n1 2 0\n") == ErrorKind::MalformedHeader);
  CHECK(parse_error("p cnf 2 1\n1 2\n") == ErrorKind::ClauseArity);
}

TEST_CASE("render then parse is identity") {
  oracles::for_each_formula(2, 2, [](const oracles::Clauses& cl) {
    CnfFormula f = make_cnf(2, cl);
    CHECK(parse_cnf(render_cnf(f)) == f);
  });
}

TEST_CASE("cnf to dnf pairs") {
  CnfFormula f = make_cnf(3, {{1, -2}, {-1, 3}});
  DnfFormula d = cnf_to_dnf(f);
  REQUIRE(d.n() == 4);
  CHECK(d.m() == 5);
  std::vector<std::string> rendered;
  for (const auto& c : d.conjunctions) rendered.push_back(c.label + "=" + render_conjunction(c, d.variables));
  CHECK(rendered == std::vector<std::string>{"a=(v1 & y1)", "b=(!v2 & !y1)", "c=(!v1 & y2)", "d=(v3 & !y2)"});
  CHECK(d.variables[3].kind == VarKind::Auxiliary);
  CHECK(d.conjunctions[3].origin_clause == 1);
  CHECK_FALSE(d.conjunctions[3].y_positive);
}

TEST_CASE("cnf to dnf for the duplicated-literal formulas") {
  auto shape = [](const CnfFormula& f) {
    DnfFormula d = cnf_to_dnf(f);
    std::string s;
    for (const auto& c : d.conjunctions) s += render_conjunction(c, d.variables);
    return s;
  };
  CHECK(shape(make_cnf(1, {{-1, -1}, {-1, -1}})) == "(!v1 & y1)(!v1 & !y1)(!v1 & y2)(!v1 & !y2)");
  CHECK(shape(make_cnf(1, {{-1, -1}, {1, 1}})) == "(!v1 & y1)(!v1 & !y1)(v1 & y2)(v1 & !y2)");
}

TEST_CASE("padding") {
  DnfFormula d = cnf_to_dnf(make_cnf(3, {{1, -2}, {-1, 3}}));
  auto p = pad_missing(d);
  CHECK(p[0].present == std::vector<Literal>{{0, true}, {3, true}});
  CHECK(p[0].starred == std::vector<VarId>{1, 2, 4});

  DnfFormula ce1 = cnf_to_dnf(make_cnf(1, {{-1, -1}, {-1, -1}}));
  auto q = pad_missing(ce1);
  CHECK(q[1].present == std::vector<Literal>{{0, false}, {1, false}});
  CHECK(q[1].starred == std::vector<VarId>{2});

  // one clause over the original plus its y: nothing missing
  DnfFormula tiny = cnf_to_dnf(make_cnf(1, {{1, 1}}));
  CHECK(pad_missing(tiny)[0].starred.empty());
}

TEST_CASE("padding covers every variable once") {
  oracles::for_each_formula(2, 2, [](const oracles::Clauses& cl) {
    DnfFormula d = cnf_to_dnf(make_cnf(2, cl));
    for (const auto& p : pad_missing(d)) {
      std::vector<int> seen(d.m(), 0);
      for (const auto& l : p.present) seen[l.var]++;
      for (VarId v : p.starred) {
        seen[v]++;
        CHECK(v != p.base.literals[0].var);
        CHECK(v != p.base.literals[1].var);
      }
      for (int s : seen) CHECK(s >= 1);
    }
  });
}

TEST_CASE("eval cnf") {
  CnfFormula ce1 = make_cnf(1, {{-1, -1}, {-1, -1}});
  CHECK(eval_cnf(ce1, bits({0})) == 2);
  CnfFormula ce3 = make_cnf(1, {{-1, -1}, {1, 1}});
  CHECK(eval_cnf(ce3, bits({1})) == 1);
  CHECK(eval_cnf(ce3, bits({0})) == 1);
  CnfFormula run = make_cnf(3, {{1, -2}, {-1, 3}});
  CHECK(eval_cnf(run, bits({0, 0, 0})) == 2);
  CHECK_THROWS_AS(eval_cnf(run, bits({0, 0})), Error);
}

TEST_CASE("eval dnf") {
  DnfFormula run = cnf_to_dnf(make_cnf(3, {{1, -2}, {-1, 3}}));
  // v1=T v2=F v3=T y1=T y2=T: only (v1 & y1) holds
  const Assignment a = bits({1, 0, 1, 1, 1});
  const auto terms = oracles::dnf_terms({{1, -2}, {-1, 3}}, 3);
  std::size_t expect = 0;
  unsigned mask = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mask |= (a[i] ? 1u : 0u) << i;
  for (const auto& t : terms) expect += oracles::lit_true(t[0], mask) && oracles::lit_true(t[1], mask);
  CHECK(expect == 1);
  CHECK(eval_dnf(run, a) == expect);

  CHECK(eval_dnf(run, bits({0, 1, 0, 0, 0})) == 0);
  DnfFormula ce1 = cnf_to_dnf(make_cnf(1, {{-1, -1}, {-1, -1}}));
  CHECK(eval_dnf(ce1, bits({0, 1, 1})) == 2);
  CHECK_THROWS_AS(eval_dnf(ce1, bits({0, 1})), Error);
}

TEST_CASE("at most one conjunction per pair holds") {
  for (int n0 = 1; n0 <= 3; ++n0) {
    oracles::for_each_formula(n0, 2, [&](const oracles::Clauses& cl) {
      DnfFormula d = cnf_to_dnf(make_cnf(2, cl));
      for (unsigned mask = 0; mask < (1u << d.m()); ++mask) {
        Assignment a(d.m());
        for (std::size_t i = 0; i < d.m(); ++i) a[i] = (mask >> i) & 1u;
        for (std::size_t i = 0; i + 1 < d.n(); i += 2) {
          const bool x = literal_holds(d.conjunctions[i].literals[0], a) && literal_holds(d.conjunctions[i].literals[1], a);
          const bool y = literal_holds(d.conjunctions[i + 1].literals[0], a) &&
                         literal_holds(d.conjunctions[i + 1].literals[1], a);
          CHECK_FALSE((x && y));
        }
      }
    });
  }
}

TEST_CASE("padding is neutral") {
  DnfFormula d = cnf_to_dnf(make_cnf(2, {{1, -2}, {2, 2}}));
  auto padded = pad_missing(d);
  for (unsigned mask = 0; mask < (1u << d.m()); ++mask) {
    Assignment a(d.m());
    for (std::size_t i = 0; i < d.m(); ++i) a[i] = (mask >> i) & 1u;
    for (std::size_t i = 0; i < d.n(); ++i) {
      const bool base = literal_holds(d.conjunctions[i].literals[0], a) && literal_holds(d.conjunctions[i].literals[1], a);
      CHECK(eval_padded(padded[i], a) == base);
    }
  }
}

TEST_CASE("labels past z") {
  CHECK(conjunction_label(0) == "a");
  CHECK(conjunction_label(25) == "z");
  CHECK(conjunction_label(26) == "aa");
}
