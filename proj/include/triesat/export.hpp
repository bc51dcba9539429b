#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "triesat/oracle.hpp"
#include "triesat/subset_finder.hpp"

namespace triesat {

using Json = nlohmann::json;

// DOT: solid main edges, dashed spans, layers as ranks, dashed group boxes,
// witness subgraph shaded.
std::string pgraph_to_dot(const PGraph& p, const std::vector<Variable>& vars);
std::string pstar_to_dot(const PStarGraph& p, const std::vector<Variable>& vars);
std::string trie_to_dot(const Trie& t);
std::string trie_like_to_dot(const TrieLikeGraph& g);
std::string layered_to_dot(const LayeredGraph& lg, const RootedSubgraph* witness = nullptr);

Json to_json(const Trie& t);
Json to_json(const TrieLikeGraph& g);
Json to_json(const LayeredGraph& lg);
Json to_json(const OracleResult& r, const std::vector<Variable>& vars);
Json to_json(const OpCounters& c);
Json assignment_json(const Assignment& a, const std::vector<Variable>& vars);

/// {max_count, witness_root, leaf_labels, assignment, mode, ordering}
Json answer_json(const PipelineRun& run);

inline const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names{"sequences", "pgraphs", "pstars", "trie", "trie-like", "layered", "answer"};
  return names;
}

/// File name -> content for each requested stage; format is "dot" or "json".
std::map<std::string, std::string> export_stages(const PipelineRun& run, const std::vector<std::string>& stages,
                                                 const std::string& format);

}  // namespace triesat
