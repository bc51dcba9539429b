#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace triesat {

// Named operation tallies collected per pipeline stage for the audit.
class OpCounters {
 public:
  void add(std::string_view key, std::uint64_t amount = 1) { counts_[std::string(key)] += amount; }
  std::uint64_t get(std::string_view key) const {
    auto it = counts_.find(std::string(key));
    return it == counts_.end() ? 0 : it->second;
  }
  const std::map<std::string, std::uint64_t>& all() const { return counts_; }

 private:
  std::map<std::string, std::uint64_t> counts_;
};

inline void bump(OpCounters* c, std::string_view key, std::uint64_t amount = 1) {
  if (c) c->add(key, amount);
}

}  // namespace triesat
