#include "triesat/sequence.hpp"

#include <algorithm>
#include <numeric>

#include "triesat/error.hpp"

namespace triesat {

GlobalOrdering::GlobalOrdering(std::vector<VarId> order, OrderSource source)
    : order_(std::move(order)), rank_(order_.size()), source_(source) {
  std::vector<bool> seen(order_.size(), false);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    VarId v = order_[i];
    if (v >= order_.size() || seen[v]) {
      throw Error(ErrorKind::IncompleteExplicitOrder, "ordering is not a permutation of the variables");
    }
    seen[v] = true;
    rank_[v] = i;
  }
}

std::vector<std::size_t> variable_frequencies(const std::vector<PaddedConjunction>& padded) {
  std::size_t m = padded.empty() ? 0 : padded.front().present.size() + padded.front().starred.size();
  std::vector<std::size_t> freq(m, 0);
  for (const auto& p : padded) {
    for (const auto& lit : p.present) {
      if (lit.positive) ++freq.at(lit.var);
    }
    for (VarId v : p.starred) ++freq.at(v);
  }
  return freq;
}

namespace {

// Order in which variables first show up as sequence items.
std::vector<std::size_t> first_appearance(const std::vector<PaddedConjunction>& padded, std::size_t m) {
  constexpr std::size_t never = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pos(m, never);
  std::size_t next = 0;
  auto touch = [&](VarId v) {
    if (pos[v] == never) pos[v] = next++;
  };
  for (const auto& p : padded) {
    for (const auto& lit : p.present) {
      if (lit.positive) touch(lit.var);
    }
    for (VarId v : p.starred) touch(v);
  }
  for (auto& p : pos) {
    if (p == never) p = next++;
  }
  return pos;
}

}  // namespace

GlobalOrdering frequency_ordering(const std::vector<PaddedConjunction>& padded, TieBreak tie_break,
                                  const std::vector<VarId>& explicit_list) {
  if (padded.empty()) throw Error(ErrorKind::InvalidArgument, "no conjunctions to order");
  const auto freq = variable_frequencies(padded);
  const std::size_t m = freq.size();

  std::vector<std::size_t> tie_key(m);
  switch (tie_break) {
    case TieBreak::FirstAppearance:
      tie_key = first_appearance(padded, m);
      break;
    case TieBreak::VariableId:
      std::iota(tie_key.begin(), tie_key.end(), std::size_t{0});
      break;
    case TieBreak::ExplicitList: {
      if (explicit_list.size() != m) {
        throw Error(ErrorKind::IncompleteExplicitOrder, "explicit list names " +
                                                            std::to_string(explicit_list.size()) + " of " +
                                                            std::to_string(m) + " variables");
      }
      std::vector<bool> seen(m, false);
      for (std::size_t i = 0; i < m; ++i) {
        VarId v = explicit_list[i];
        if (v >= m || seen[v]) {
          throw Error(ErrorKind::IncompleteExplicitOrder, "explicit list is not a permutation");
        }
        seen[v] = true;
        tie_key[v] = i;
      }
      for (std::size_t i = 0; i + 1 < m; ++i) {
        if (freq[explicit_list[i]] < freq[explicit_list[i + 1]]) {
          throw Error(ErrorKind::ExplicitOrderContradictsFrequency,
                      "variable at position " + std::to_string(i + 1) +
                          " is less frequent than its successor");
        }
      }
      break;
    }
  }

  std::vector<VarId> order(m);
  std::iota(order.begin(), order.end(), VarId{0});
  std::sort(order.begin(), order.end(), [&](VarId a, VarId b) {
    if (freq[a] != freq[b]) return freq[a] > freq[b];
    return tie_key[a] < tie_key[b];
  });
  return GlobalOrdering(std::move(order), OrderSource::Frequency);
}

GlobalOrdering explicit_ordering(const std::vector<VarId>& order, std::size_t variable_count) {
  if (order.size() != variable_count) {
    throw Error(ErrorKind::IncompleteExplicitOrder, "ordering names " + std::to_string(order.size()) + " of " +
                                                        std::to_string(variable_count) + " variables");
  }
  return GlobalOrdering(order, OrderSource::Explicit);
}

GlobalOrdering lexical_ordering(std::size_t variable_count) {
  std::vector<VarId> order(variable_count);
  std::iota(order.begin(), order.end(), VarId{0});
  return GlobalOrdering(std::move(order), OrderSource::Explicit);
}

std::vector<std::string> parse_ordering(std::string_view spec) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (true) {
    std::size_t end = spec.find('>', start);
    std::string_view piece = spec.substr(start, end == std::string_view::npos ? spec.npos : end - start);
    while (!piece.empty() && (piece.front() == ' ' || piece.front() == '\t')) piece.remove_prefix(1);
    while (!piece.empty() && (piece.back() == ' ' || piece.back() == '\t')) piece.remove_suffix(1);
    if (piece.empty()) {
      throw Error(ErrorKind::UnknownVariableName, "empty name in ordering '" + std::string(spec) + "'");
    }
    if (std::find(names.begin(), names.end(), piece) != names.end()) {
      throw Error(ErrorKind::DuplicateName, "'" + std::string(piece) + "' appears twice in ordering");
    }
    names.emplace_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return names;
}

std::vector<VarId> resolve_names(const std::vector<std::string>& names, const std::vector<Variable>& vars) {
  std::vector<VarId> out;
  out.reserve(names.size());
  for (const auto& name : names) {
    auto id = find_variable(vars, name);
    if (!id) throw Error(ErrorKind::UnknownVariableName, "no variable named '" + name + "'");
    out.push_back(*id);
  }
  return out;
}

std::string render_ordering(const GlobalOrdering& ord, const std::vector<Variable>& vars) {
  std::string out;
  for (VarId v : ord.order()) {
    if (!out.empty()) out += '>';
    out += vars.at(v).name;
  }
  return out;
}

std::vector<VarSequence> build_sequences(const std::vector<PaddedConjunction>& padded,
                                         const GlobalOrdering& ord) {
  std::vector<VarSequence> out;
  out.reserve(padded.size());
  for (const auto& p : padded) {
    std::vector<SeqItem> interior;
    for (const auto& lit : p.present) {
      if (lit.var >= ord.size()) {
        throw Error(ErrorKind::IncompleteExplicitOrder, "ordering does not cover every variable");
      }
      if (lit.positive) interior.push_back(SeqItem::present(lit.var));
    }
    for (VarId v : p.starred) {
      if (v >= ord.size()) {
        throw Error(ErrorKind::IncompleteExplicitOrder, "ordering does not cover every variable");
      }
      interior.push_back(SeqItem::starred(v));
    }
    std::sort(interior.begin(), interior.end(),
              [&](const SeqItem& a, const SeqItem& b) { return ord.rank(*a.var) < ord.rank(*b.var); });

    VarSequence seq;
    seq.label = p.base.label;
    seq.items.reserve(interior.size() + 2);
    seq.items.push_back(SeqItem::start());
    seq.items.insert(seq.items.end(), interior.begin(), interior.end());
    seq.items.push_back(SeqItem::end());
    out.push_back(std::move(seq));
  }
  return out;
}

std::string render_item(const SeqItem& item, const std::vector<Variable>& vars) {
  switch (item.tag) {
    case ItemTag::Start: return "#";
    case ItemTag::End: return "$";
    case ItemTag::Var: return vars.at(*item.var).name;
    case ItemTag::StarredVar: return "(" + vars.at(*item.var).name + ",*)";
  }
  return "?";
}

std::string render_sequence(const VarSequence& seq, const std::vector<Variable>& vars) {
  std::string out;
  for (const auto& item : seq.items) {
    if (!out.empty()) out += '.';
    out += render_item(item, vars);
  }
  return out;
}

}  // namespace triesat
