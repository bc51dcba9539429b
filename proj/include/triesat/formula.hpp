#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace triesat {

using VarId = std::uint32_t;

enum class VarKind { Original, Auxiliary };

struct Variable {
  VarId id = 0;
  std::string name;
  VarKind kind = VarKind::Original;

  bool operator==(const Variable&) const = default;
};

struct Literal {
  VarId var = 0;
  bool positive = true;

  bool operator==(const Literal&) const = default;
  Literal negated() const { return {var, !positive}; }
};

// A 2-CNF clause. One-literal input clauses are stored with the literal twice.
struct Clause {
  std::array<Literal, 2> literals;
  std::size_t index = 0;

  bool operator==(const Clause&) const = default;
};

struct CnfFormula {
  std::vector<Clause> clauses;
  std::vector<Variable> variables;

  std::size_t n0() const { return clauses.size(); }
  std::size_t m0() const { return variables.size(); }

  bool operator==(const CnfFormula&) const = default;
};

struct DnfConjunction {
  std::string label;
  std::array<Literal, 2> literals;
  std::size_t origin_clause = 0;
  bool y_positive = true;  // (l1 & y_i) when true, (l2 & !y_i) when false

  bool operator==(const DnfConjunction&) const = default;
};

struct DnfFormula {
  std::vector<DnfConjunction> conjunctions;
  std::vector<Variable> variables;  // originals first, then y1..y_n0

  std::size_t n() const { return conjunctions.size(); }
  std::size_t m() const { return variables.size(); }

  bool operator==(const DnfFormula&) const = default;
};

// A conjunction padded with the tautologies (v | !v) for every variable it
// does not mention. Starred variables are kept in id order.
struct PaddedConjunction {
  DnfConjunction base;
  std::vector<Literal> present;
  std::vector<VarId> starred;
};

using Assignment = std::vector<bool>;

/// Builds the variable table v1..v{count}.
std::vector<Variable> original_variables(std::size_t count);

std::optional<VarId> find_variable(const std::vector<Variable>& vars, std::string_view name);

/// Conjunction labels: a..z, then aa, ab, ...
std::string conjunction_label(std::size_t index);

/// Parses the DIMACS-like `p cnf <m0> <n0>` format.
CnfFormula parse_cnf(std::string_view text);

/// Writes the normalized two-literal form; parse_cnf(render_cnf(f)) == f.
std::string render_cnf(const CnfFormula& f);

/// Convenience constructor from signed 1-based literals, e.g. {{-1,-1},{2,3}}.
CnfFormula make_cnf(std::size_t m0, const std::vector<std::array<int, 2>>& clauses);

DnfFormula cnf_to_dnf(const CnfFormula& f);

std::vector<PaddedConjunction> pad_missing(const DnfFormula& d);

bool literal_holds(const Literal& lit, const Assignment& a);

std::size_t eval_cnf(const CnfFormula& f, const Assignment& a);
std::size_t eval_dnf(const DnfFormula& d, const Assignment& a);

// Padded conjunctions evaluate like their base; starred items are tautologies.
bool eval_padded(const PaddedConjunction& p, const Assignment& a);

std::string render_literal(const Literal& lit, const std::vector<Variable>& vars);
std::string render_clause(const Clause& c, const std::vector<Variable>& vars);
std::string render_conjunction(const DnfConjunction& c, const std::vector<Variable>& vars);

}  // namespace triesat
