#include "triesat/export.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "triesat/error.hpp"

namespace triesat {

namespace {

std::string node_label(const Trie& t, NodeId id) {
  std::string s = Trie::display_id(id) + "\\n" + t.label_text(id);
  const auto& labels = t.node(id).conjunction_labels;
  if (!labels.empty()) {
    s += " {";
    for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + labels[i];
    s += "}";
  }
  return s;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

void path_graph_dot(std::ostringstream& os, const PGraph& p, const std::vector<Span>& spans,
                    const std::vector<Variable>& vars) {
  os << "digraph \"" << p.label << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    os << "  p" << i << " [label=\"" << render_item(p.nodes[i], vars) << "\"];\n";
  }
  for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) os << "  p" << i << " -> p" << i + 1 << ";\n";
  for (const Span& s : spans) {
    os << "  p" << s.from << " -> p" << s.to << " [style=dashed, constraint=false];\n";
  }
  os << "}\n";
}

}  // namespace

std::string pgraph_to_dot(const PGraph& p, const std::vector<Variable>& vars) {
  std::ostringstream os;
  path_graph_dot(os, p, p.spans, vars);
  return os.str();
}

std::string pstar_to_dot(const PStarGraph& p, const std::vector<Variable>& vars) {
  std::ostringstream os;
  path_graph_dot(os, p.base, p.closed_spans, vars);
  return os.str();
}

std::string trie_to_dot(const Trie& t) {
  std::ostringstream os;
  os << "digraph trie {\n  node [shape=circle];\n";
  for (const auto& n : t.nodes()) os << "  n" << n.id + 1 << " [label=\"" << node_label(t, n.id) << "\"];\n";
  for (const auto& n : t.nodes()) {
    for (NodeId c : n.children) os << "  n" << n.id + 1 << " -> n" << c + 1 << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string trie_like_to_dot(const TrieLikeGraph& g) {
  const Trie& t = g.trie();
  std::ostringstream os;
  os << "digraph trie_like {\n  node [shape=circle];\n";
  for (const auto& n : t.nodes()) os << "  n" << n.id + 1 << " [label=\"" << node_label(t, n.id) << "\"];\n";
  for (const auto& n : t.nodes()) {
    for (NodeId c : n.children) os << "  n" << n.id + 1 << " -> n" << c + 1 << ";\n";
  }
  for (const auto& e : g.span_edges()) {
    os << "  n" << e.from + 1 << " -> n" << e.to + 1 << " [style=dashed, constraint=false, label=\""
       << join(e.labels, ",") << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string layered_to_dot(const LayeredGraph& lg, const RootedSubgraph* witness) {
  const Trie& t = lg.source->trie();
  std::set<InstanceId> shaded;
  if (witness) shaded.insert(witness->instances.begin(), witness->instances.end());
  std::ostringstream os;
  os << "digraph layered {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (std::size_t L = 0; L < lg.layers.size(); ++L) {
    os << "  subgraph layer" << L + 1 << " {\n    rank=same;\n";
    for (InstanceId id : lg.layers[L]) {
      const NodeId node = lg.instances[id].trie_node;
      os << "    i" << id << " [label=\"" << node_label(t, node) << "\"";
      if (shaded.count(id)) os << ", style=filled, fillcolor=gray80";
      os << "];\n";
    }
    os << "  }\n";
  }
  for (const auto& g : lg.groups) {
    if (g.members.size() < 2) continue;
    os << "  subgraph cluster_g" << g.id << " {\n    style=dashed;\n    label=\"\";\n";
    for (InstanceId m : g.members) os << "    i" << m << ";\n";
    os << "  }\n";
  }
  for (const auto& e : lg.edges) {
    os << "  i" << e.child << " -> i" << e.parent;
    std::vector<std::string> attrs;
    if (e.via_span) attrs.push_back("style=dashed");
    if (shaded.count(e.child) && shaded.count(e.parent)) attrs.push_back("penwidth=2.5");
    if (!attrs.empty()) os << " [" << join(attrs, ", ") << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

Json to_json(const Trie& t) {
  Json nodes = Json::array();
  for (const auto& n : t.nodes()) {
    Json j{{"id", Trie::display_id(n.id)}, {"label", t.label_text(n.id)}, {"depth", n.depth}};
    j["parent"] = n.parent ? Json(Trie::display_id(*n.parent)) : Json(nullptr);
    Json children = Json::array();
    for (NodeId c : n.children) children.push_back(Trie::display_id(c));
    j["children"] = children;
    if (!n.conjunction_labels.empty()) j["conjunctions"] = n.conjunction_labels;
    nodes.push_back(j);
  }
  return Json{{"nodes", nodes}};
}

Json to_json(const TrieLikeGraph& g) {
  Json j = to_json(g.trie());
  Json spans = Json::array();
  for (const auto& e : g.span_edges()) {
    spans.push_back({{"from", Trie::display_id(e.from)}, {"to", Trie::display_id(e.to)}, {"labels", e.labels}});
  }
  j["spans"] = spans;
  Json map = Json::object();
  for (std::size_t i = 0; i < g.node_map().labels.size(); ++i) {
    Json positions = Json::array();
    for (NodeId id : g.node_map().positions[i]) positions.push_back(Trie::display_id(id));
    map[g.node_map().labels[i]] = positions;
  }
  j["node_map"] = map;
  return j;
}

namespace {

Json subset_json(const ReachableSubset& rs, const Trie& t) {
  Json members = Json::array();
  for (NodeId m : rs.members) members.push_back(Trie::display_id(m));
  std::string label = rs.label.tag == ItemTag::Start ? "#"
                      : rs.label.tag == ItemTag::End ? "$"
                                                     : t.variable_names().at(*rs.label.var);
  return {{"repeated", Trie::display_id(rs.repeated)},
          {"anchor", Trie::display_id(rs.anchor)},
          {"label", label},
          {"members", members}};
}

}  // namespace

Json to_json(const LayeredGraph& lg) {
  const Trie& t = lg.source->trie();
  Json layers = Json::array();
  for (const auto& layer : lg.layers) {
    Json l = Json::array();
    for (InstanceId id : layer) l.push_back({{"instance", id}, {"node", Trie::display_id(lg.instances[id].trie_node)}});
    layers.push_back(l);
  }
  Json edges = Json::array();
  for (const auto& e : lg.edges) {
    edges.push_back({{"child", e.child}, {"parent", e.parent}, {"expansion", e.expansion}, {"span", e.via_span}});
  }
  Json groups = Json::array();
  for (const auto& g : lg.groups) {
    std::string label = g.label.tag == ItemTag::Start ? "#"
                        : g.label.tag == ItemTag::End ? "$"
                                                      : t.variable_names().at(*g.label.var);
    groups.push_back({{"id", g.id},
                      {"layer", g.layer},
                      {"label", label},
                      {"members", g.members},
                      {"generated_by", g.generated_by},
                      {"pushed", g.pushed}});
  }
  Json expansions = Json::array();
  for (const auto& e : lg.expansions) {
    Json j{{"id", e.id}, {"layer", e.layer}, {"kind", to_string(e.kind)}, {"members", e.members}};
    if (e.depth_floor) j["depth_floor"] = *e.depth_floor;
    expansions.push_back(j);
  }
  Json merges = Json::array();
  for (const auto& ev : lg.merge_events) {
    Json subsets = Json::array();
    for (const auto& rs : ev.subsets) subsets.push_back(subset_json(rs, t));
    Json j{{"layer", ev.layer},
           {"instance", ev.instance},
           {"node", Trie::display_id(ev.trie_node)},
           {"generators", ev.generators},
           {"case", to_string(ev.duplicate_case)},
           {"degenerate", ev.degenerate},
           {"reason", ev.reason},
           {"subsets", subsets}};
    if (ev.boundary) {
      Json ub = Json::array();
      for (NodeId m : ev.boundary->members) ub.push_back(Trie::display_id(m));
      j["upper_boundary"] = ub;
    }
    if (ev.expansion) j["expansion"] = *ev.expansion;
    merges.push_back(j);
  }
  return {{"mode", to_string(lg.mode)},  {"layers", layers},         {"edges", edges},
          {"groups", groups},            {"expansions", expansions}, {"merge_events", merges}};
}

Json assignment_json(const Assignment& a, const std::vector<Variable>& vars) {
  Json j = Json::object();
  for (std::size_t i = 0; i < a.size() && i < vars.size(); ++i) j[vars[i].name] = static_cast<bool>(a[i]);
  return j;
}

Json to_json(const OracleResult& r, const std::vector<Variable>& vars) {
  return {{"max_count", r.max_count},
          {"witness", assignment_json(r.witness, vars)},
          {"assignments_tried", r.assignments_tried}};
}

Json to_json(const OpCounters& c) {
  Json j = Json::object();
  for (const auto& [k, v] : c.all()) j[k] = v;
  return j;
}

Json answer_json(const PipelineRun& run) {
  const PipelineAnswer& a = run.answer;
  const auto& inst = run.layered.instances.at(a.witness.root);
  return {{"max_count", a.max_count},
          {"witness_root", {{"instance", a.witness.root},
                            {"node", Trie::display_id(inst.trie_node)},
                            {"layer", inst.layer}}},
          {"leaf_labels", a.witness.leaf_labels},
          {"assignment", assignment_json(a.witness.implied_assignment, run.dnf.variables)},
          {"mode", to_string(a.mode)},
          {"ordering", render_ordering(a.ordering_used, run.dnf.variables)}};
}

std::map<std::string, std::string> export_stages(const PipelineRun& run, const std::vector<std::string>& stages,
                                                 const std::string& format) {
  if (format != "dot" && format != "json") throw Error(ErrorKind::InvalidArgument, "format must be dot or json");
  const bool dot = format == "dot";
  const auto& vars = run.dnf.variables;
  std::map<std::string, std::string> files;
  for (const auto& stage : stages) {
    const auto& known = stage_names();
    if (std::find(known.begin(), known.end(), stage) == known.end()) {
      throw Error(ErrorKind::InvalidArgument, "unknown stage '" + stage + "'");
    }
    if (stage == "sequences") {
      if (dot) {
        std::string s;
        for (const auto& seq : run.sequences) s += seq.label + " = " + render_sequence(seq, vars) + "\n";
        files["sequences.txt"] = s;
      } else {
        Json j = Json::object();
        for (const auto& seq : run.sequences) j[seq.label] = render_sequence(seq, vars);
        files["sequences.json"] = j.dump(2) + "\n";
      }
    } else if (stage == "pgraphs" || stage == "pstars") {
      const bool star = stage == "pstars";
      if (dot) {
        for (std::size_t i = 0; i < run.pgraphs.size(); ++i) {
          const std::string name = (star ? "pstar_" : "pgraph_") + run.pgraphs[i].label + ".dot";
          files[name] = star ? pstar_to_dot(run.pstars[i], vars) : pgraph_to_dot(run.pgraphs[i], vars);
        }
      } else {
        Json j = Json::object();
        for (std::size_t i = 0; i < run.pgraphs.size(); ++i) {
          Json spans = Json::array();
          for (const Span& s : star ? run.pstars[i].closed_spans : run.pgraphs[i].spans) {
            spans.push_back({s.from, s.to});
          }
          j[run.pgraphs[i].label] = {{"sequence", render_sequence(run.sequences[i], vars)}, {"spans", spans}};
        }
        files[stage + ".json"] = j.dump(2) + "\n";
      }
    } else if (stage == "trie") {
      files[dot ? "trie.dot" : "trie.json"] = dot ? trie_to_dot(run.graph->trie()) : to_json(run.graph->trie()).dump(2) + "\n";
    } else if (stage == "trie-like") {
      files[dot ? "trie_like.dot" : "trie_like.json"] =
          dot ? trie_like_to_dot(*run.graph) : to_json(*run.graph).dump(2) + "\n";
    } else if (stage == "layered") {
      files[dot ? "layered.dot" : "layered.json"] =
          dot ? layered_to_dot(run.layered, &run.answer.witness) : to_json(run.layered).dump(2) + "\n";
    } else if (stage == "answer") {
      files["answer.json"] = answer_json(run).dump(2) + "\n";
    }
  }
  return files;
}

}  // namespace triesat
