#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bangnce/bang_graph.hpp"
#include "bangnce/ednce.hpp"
#include "bangnce/iso_class_set.hpp"

namespace bangnce {

/// Replaces each beta<k> edge u → v by a wire u → w → v through a fresh
/// wire-vertex named "u~beta<k>~v". Throws GraphError when a beta edge
/// touches a wire-vertex.
LabeledGraph wire_decode(const LabeledGraph& g);

enum class EquivalenceMode { Iso, Homeo, Wire };

std::string_view to_string(EquivalenceMode m);
std::optional<EquivalenceMode> parse_mode(std::string_view s);

struct LanguageDiff {
  std::vector<LabeledGraph> only_in_a;
  std::vector<LabeledGraph> only_in_b;
  bool empty() const { return only_in_a.empty() && only_in_b.empty(); }
};

struct EquivalenceResult {
  bool equal = false;
  LanguageDiff diff;  // at most `witnesses` graphs per side
};

/// Iso compares the sets as given, Homeo compares wire-homeomorphism
/// normal forms, Wire additionally decodes beta edges of `b` first.
EquivalenceResult equal_up_to(const IsoClassSet& a, const IsoClassSet& b, EquivalenceMode mode,
                              std::size_t witnesses = 5);

// The set after normalisation for `mode`; `encoded` selects wire decoding.
IsoClassSet normalize(const IsoClassSet& s, EquivalenceMode mode, bool encoded);

/// Largest shortest-path length over connected pairs of distinct vertices.
/// 0 for graphs with fewer than two vertices, -1 when no two distinct
/// vertices are connected. Edges are undirected unless `directed`.
int max_distance(const LabeledGraph& g, bool directed = false);

struct DistanceProfile {
  std::vector<int> strata;       // budgets probed
  std::vector<int> maxima;       // max distance per stratum (-1 when nothing connected)
  std::vector<std::size_t> sizes;  // language slice size per stratum
  bool growing = false;

  std::string verdict() const { return growing ? "growing" : "bounded-so-far"; }
};

// Growing iff the maxima strictly increase over the last three strata.
bool strictly_growing_tail(const std::vector<int>& maxima);

/// Strata are !-box operation budgets; every stratum uses `max_vertices`.
DistanceProfile boundedness_probe(const BangGraph& g, const std::vector<int>& op_strata,
                                  int max_vertices, bool directed = false);
/// Strata are derivation-step budgets.
DistanceProfile boundedness_probe(const Grammar& g, const std::vector<int>& step_strata,
                                  int max_vertices, bool directed = false);

}  // namespace bangnce
