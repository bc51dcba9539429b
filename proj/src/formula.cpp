#include "triesat/formula.hpp"

#include <charconv>
#include <sstream>

#include "triesat/error.hpp"

namespace triesat {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool to_long(std::string_view tok, long& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

std::vector<Variable> original_variables(std::size_t count) {
  std::vector<Variable> vars;
  vars.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    vars.push_back({static_cast<VarId>(i), "v" + std::to_string(i + 1), VarKind::Original});
  }
  return vars;
}

std::optional<VarId> find_variable(const std::vector<Variable>& vars, std::string_view name) {
  for (const auto& v : vars) {
    if (v.name == name) return v.id;
  }
  return std::nullopt;
}

std::string conjunction_label(std::size_t index) {
  std::string label;
  std::size_t k = index + 1;
  while (k > 0) {
    --k;
    label.insert(label.begin(), static_cast<char>('a' + k % 26));
    k /= 26;
  }
  return label;
}

CnfFormula parse_cnf(std::string_view text) {
  bool have_header = false;
  long m0 = 0;
  long n0 = 0;
  CnfFormula f;
  std::vector<long> pending;

  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "c" || tokens[0].front() == 'c') continue;
    if (!have_header) {
      if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "cnf" || !to_long(tokens[2], m0) ||
          !to_long(tokens[3], n0) || m0 < 0 || n0 < 0) {
        throw Error(ErrorKind::MalformedHeader,
                    "expected 'p cnf <vars> <clauses>' on line " + std::to_string(line_no));
      }
      have_header = true;
      f.variables = original_variables(static_cast<std::size_t>(m0));
      continue;
    }
    for (std::string_view tok : tokens) {
      long value = 0;
      if (!to_long(tok, value)) {
        throw Error(ErrorKind::MalformedHeader,
                    "non-integer token '" + std::string(tok) + "' on line " + std::to_string(line_no));
      }
      if (value != 0) {
        if (value > m0 || -value > m0) {
          throw Error(ErrorKind::UnknownVariable, "literal " + std::to_string(value) + " exceeds declared " +
                                                      std::to_string(m0) + " variables");
        }
        pending.push_back(value);
        if (pending.size() > 2) {
          throw Error(ErrorKind::ClauseArity,
                      "clause " + std::to_string(f.clauses.size() + 1) + " has more than two literals");
        }
        continue;
      }
      if (pending.empty()) {
        throw Error(ErrorKind::ClauseArity, "clause " + std::to_string(f.clauses.size() + 1) + " is empty");
      }
      if (pending.size() == 1) pending.push_back(pending.front());
      Clause c;
      for (std::size_t i = 0; i < 2; ++i) {
        long v = pending[i];
        c.literals[i] = Literal{static_cast<VarId>((v > 0 ? v : -v) - 1), v > 0};
      }
      c.index = f.clauses.size();
      f.clauses.push_back(c);
      pending.clear();
    }
  }
  if (!have_header) throw Error(ErrorKind::MalformedHeader, "missing 'p cnf' header");
  if (!pending.empty()) throw Error(ErrorKind::ClauseArity, "last clause is not terminated by 0");
  if (f.clauses.empty()) throw Error(ErrorKind::EmptyFormula, "formula has no clauses");
  if (static_cast<long>(f.clauses.size()) != n0) {
    throw Error(ErrorKind::MalformedHeader, "header declares " + std::to_string(n0) + " clauses, found " +
                                                std::to_string(f.clauses.size()));
  }
  return f;
}

std::string render_cnf(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.m0() << ' ' << f.n0() << '\n';
  for (const auto& c : f.clauses) {
    for (const auto& lit : c.literals) {
      out << (lit.positive ? "" : "-") << (lit.var + 1) << ' ';
    }
    out << "0\n";
  }
  return out.str();
}

CnfFormula make_cnf(std::size_t m0, const std::vector<std::array<int, 2>>& clauses) {
  std::ostringstream text;
  text << "p cnf " << m0 << ' ' << clauses.size() << '\n';
  for (const auto& c : clauses) text << c[0] << ' ' << c[1] << " 0\n";
  return parse_cnf(text.str());
}

DnfFormula cnf_to_dnf(const CnfFormula& f) {
  DnfFormula d;
  d.variables = f.variables;
  const auto m0 = static_cast<VarId>(f.m0());
  for (std::size_t i = 0; i < f.n0(); ++i) {
    d.variables.push_back(
        {static_cast<VarId>(m0 + i), "y" + std::to_string(i + 1), VarKind::Auxiliary});
  }
  for (const auto& c : f.clauses) {
    const Literal y{static_cast<VarId>(m0 + c.index), true};
    d.conjunctions.push_back({conjunction_label(d.conjunctions.size()), {c.literals[0], y}, c.index, true});
    d.conjunctions.push_back(
        {conjunction_label(d.conjunctions.size()), {c.literals[1], y.negated()}, c.index, false});
  }
  return d;
}

std::vector<PaddedConjunction> pad_missing(const DnfFormula& d) {
  std::vector<PaddedConjunction> out;
  out.reserve(d.n());
  for (const auto& conj : d.conjunctions) {
    PaddedConjunction p;
    p.base = conj;
    std::vector<bool> mentioned(d.m(), false);
    for (const auto& lit : conj.literals) {
      if (!mentioned[lit.var]) p.present.push_back(lit);
      mentioned[lit.var] = true;
    }
    for (VarId v = 0; v < d.m(); ++v) {
      if (!mentioned[v]) p.starred.push_back(v);
    }
    out.push_back(std::move(p));
  }
  return out;
}

bool literal_holds(const Literal& lit, const Assignment& a) { return a[lit.var] == lit.positive; }

std::size_t eval_cnf(const CnfFormula& f, const Assignment& a) {
  if (a.size() != f.m0()) {
    throw Error(ErrorKind::PartialAssignment, "assignment covers " + std::to_string(a.size()) + " of " +
                                                  std::to_string(f.m0()) + " variables");
  }
  std::size_t count = 0;
  for (const auto& c : f.clauses) {
    if (literal_holds(c.literals[0], a) || literal_holds(c.literals[1], a)) ++count;
  }
  return count;
}

std::size_t eval_dnf(const DnfFormula& d, const Assignment& a) {
  if (a.size() != d.m()) {
    throw Error(ErrorKind::PartialAssignment, "assignment covers " + std::to_string(a.size()) + " of " +
                                                  std::to_string(d.m()) + " variables");
  }
  std::size_t count = 0;
  for (const auto& c : d.conjunctions) {
    if (literal_holds(c.literals[0], a) && literal_holds(c.literals[1], a)) ++count;
  }
  return count;
}

bool eval_padded(const PaddedConjunction& p, const Assignment& a) {
  for (const auto& lit : p.present) {
    if (!literal_holds(lit, a)) return false;
  }
  for (VarId v : p.starred) {
    // (v | !v)
    if (!(a[v] || !a[v])) return false;
  }
  return true;
}

std::string render_literal(const Literal& lit, const std::vector<Variable>& vars) {
  return (lit.positive ? "" : "!") + vars.at(lit.var).name;
}

std::string render_clause(const Clause& c, const std::vector<Variable>& vars) {
  return "(" + render_literal(c.literals[0], vars) + " | " + render_literal(c.literals[1], vars) + ")";
}

std::string render_conjunction(const DnfConjunction& c, const std::vector<Variable>& vars) {
  return "(" + render_literal(c.literals[0], vars) + " & " + render_literal(c.literals[1], vars) + ")";
}

}  // namespace triesat
