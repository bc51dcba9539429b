#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triesat/formula.hpp"

namespace triesat {

enum class ItemTag { Start, Var, StarredVar, End };

struct SeqItem {
  ItemTag tag = ItemTag::Start;
  std::optional<VarId> var;

  bool operator==(const SeqItem&) const = default;

  static SeqItem start() { return {ItemTag::Start, std::nullopt}; }
  static SeqItem end() { return {ItemTag::End, std::nullopt}; }
  static SeqItem present(VarId v) { return {ItemTag::Var, v}; }
  static SeqItem starred(VarId v) { return {ItemTag::StarredVar, v}; }

  bool is_starred() const { return tag == ItemTag::StarredVar; }
};

// Sentinel-wrapped, globally sorted item list for one conjunction.
struct VarSequence {
  std::string label;
  std::vector<SeqItem> items;

  bool operator==(const VarSequence&) const = default;
};

enum class OrderSource { Frequency, Explicit };

enum class TieBreak { FirstAppearance, VariableId, ExplicitList };

/// A fixed total order over the DNF variables; order[0] sorts first.
class GlobalOrdering {
 public:
  GlobalOrdering() = default;
  GlobalOrdering(std::vector<VarId> order, OrderSource source);

  const std::vector<VarId>& order() const { return order_; }
  OrderSource source() const { return source_; }
  std::size_t rank(VarId v) const { return rank_.at(v); }
  std::size_t size() const { return order_.size(); }

  bool operator==(const GlobalOrdering& other) const { return order_ == other.order_; }

 private:
  std::vector<VarId> order_;
  std::vector<std::size_t> rank_;
  OrderSource source_ = OrderSource::Explicit;
};

/// Number of sequences in which each variable shows up as an item (positive or starred).
std::vector<std::size_t> variable_frequencies(const std::vector<PaddedConjunction>& padded);

GlobalOrdering frequency_ordering(const std::vector<PaddedConjunction>& padded, TieBreak tie_break,
                                  const std::vector<VarId>& explicit_list = {});

/// Takes the caller's permutation as is; it must name every variable once.
GlobalOrdering explicit_ordering(const std::vector<VarId>& order, std::size_t variable_count);

/// Variable-id order, i.e. v1 > v2 > ... > y1 > y2 > ...
GlobalOrdering lexical_ordering(std::size_t variable_count);

/// Splits "y1>y2>v1" into names.
std::vector<std::string> parse_ordering(std::string_view spec);

std::vector<VarId> resolve_names(const std::vector<std::string>& names, const std::vector<Variable>& vars);

std::string render_ordering(const GlobalOrdering& ord, const std::vector<Variable>& vars);

std::vector<VarSequence> build_sequences(const std::vector<PaddedConjunction>& padded,
                                         const GlobalOrdering& ord);

/// Dotted form, e.g. "#.v1.(v2,*).$".
std::string render_sequence(const VarSequence& seq, const std::vector<Variable>& vars);
std::string render_item(const SeqItem& item, const std::vector<Variable>& vars);

}  // namespace triesat
