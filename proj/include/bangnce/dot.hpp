#pragma once

#include <string>
#include <string_view>

#include "bangnce/bang_graph.hpp"
#include "bangnce/ednce.hpp"

namespace bangnce {

// Wire-vertices are points, node-vertices circles, nonterminals boxes.
std::string to_dot(const LabeledGraph& g, std::string_view name = "G");
// Boxes become dashed rectangles with dotted membership edges.
std::string to_dot(const BangGraph& g, std::string_view name = "G");
/// One frame per production. Each connection instruction is an edge from a
/// point outside the frame to its attach vertex, labelled "σ β/γ".
std::string to_dot(const Grammar& g, std::string_view name = "G");

}  // namespace bangnce
