#pragma once

#include <map>
#include <optional>
#include <string>

#include "bangnce/graph.hpp"

namespace bangnce {

// Maps each vertex of the first graph to its image in the second.
using Isomorphism = std::map<VertexId, VertexId>;

/// Backtracking search for a label- and edge-preserving bijection. Candidate
/// pairs are filtered by a colour refinement run jointly on both graphs.
std::optional<Isomorphism> find_isomorphism(const LabeledGraph& a, const LabeledGraph& b);

inline bool are_isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
  return find_isomorphism(a, b).has_value();
}

/// Byte string equal for two graphs iff they are isomorphic.
///
/// Weakly connected components are canonicalised separately. Each component
/// goes through colour refinement and an individualisation search whose
/// branches are pruned by twin transpositions and by automorphisms discovered
/// at equal leaves.
std::string canonical_key(const LabeledGraph& g);

}  // namespace bangnce
