#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "bangnce/graph.hpp"

namespace bangnce {

/// Set of graphs up to isomorphism, keyed by canonical_key. The first graph
/// inserted for a class stays as its representative.
class IsoClassSet {
 public:
  using Map = std::map<std::string, LabeledGraph>;

  // Returns true when the class was not present before.
  bool insert(const LabeledGraph& g);
  bool insert_keyed(std::string key, const LabeledGraph& g);
  bool contains(const LabeledGraph& g) const;
  bool contains_key(const std::string& key) const { return classes_.count(key) != 0; }

  std::size_t size() const { return classes_.size(); }
  bool empty() const { return classes_.empty(); }
  const Map& classes() const { return classes_; }
  Map::const_iterator begin() const { return classes_.begin(); }
  Map::const_iterator end() const { return classes_.end(); }

  template <typename Pred>
  IsoClassSet filter(Pred keep) const {
    IsoClassSet out;
    for (const auto& [k, g] : classes_) {
      if (keep(g)) out.classes_.emplace(k, g);
    }
    return out;
  }

  bool operator==(const IsoClassSet& other) const;

 private:
  Map classes_;
};

}  // namespace bangnce
