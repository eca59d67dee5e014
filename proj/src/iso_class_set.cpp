#include "bangnce/iso_class_set.hpp"

#include "bangnce/isomorphism.hpp"

namespace bangnce {

bool IsoClassSet::insert(const LabeledGraph& g) { return insert_keyed(canonical_key(g), g); }

bool IsoClassSet::insert_keyed(std::string key, const LabeledGraph& g) {
  return classes_.emplace(std::move(key), g).second;
}

bool IsoClassSet::contains(const LabeledGraph& g) const {
  return classes_.count(canonical_key(g)) != 0;
}

bool IsoClassSet::operator==(const IsoClassSet& other) const {
  if (classes_.size() != other.classes_.size()) return false;
  for (auto a = classes_.begin(), b = other.classes_.begin(); a != classes_.end(); ++a, ++b) {
    if (a->first != b->first) return false;
  }
  return true;
}

}  // namespace bangnce
