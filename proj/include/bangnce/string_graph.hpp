#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bangnce/graph.hpp"

namespace bangnce {

struct Violation {
  enum class Kind {
    NodeNodeEdge,   // condition 1
    WireInDegree,   // condition 2
    WireOutDegree,  // condition 3
    NonStringLabel,
  };
  Kind kind;
  std::optional<VertexId> vertex;
  std::optional<Edge> edge;

  std::string message() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_string_graph(const LabeledGraph& g);
// Throws GraphError naming the first violation.
void require_string_graph(const LabeledGraph& g);

struct Boundary {
  std::set<VertexId> inputs;
  std::set<VertexId> outputs;
};

Boundary boundary(const LabeledGraph& g);

enum class WireKind { Closed, Circle };

/// A maximal chain of wire-vertices.
///
/// For a closed wire `vertices` runs from one endpoint to the other in edge
/// direction; endpoints are node-vertices or boundary wire-vertices (an
/// isolated wire-vertex is a closed wire of length one whose two endpoints
/// coincide). For a circle `vertices` lists the cycle once, starting at its
/// smallest id.
struct Wire {
  std::vector<VertexId> vertices;
  WireKind kind = WireKind::Closed;

  const VertexId& source() const { return vertices.front(); }
  const VertexId& target() const { return vertices.back(); }
  std::vector<VertexId> interior() const;
  std::vector<VertexId> wire_vertices(const LabeledGraph& g) const;
  bool operator==(const Wire&) const = default;
};

std::vector<Wire> decompose_wires(const LabeledGraph& g);

// The wire containing wire-vertex `v` (closed wires are preferred by
// decompose_wires' partition, so the answer is unique).
Wire wire_of(const LabeledGraph& g, const VertexId& v);

/// Canonical representative of the wire-homeomorphism class: one interior
/// wire-vertex on node-to-node wires, none on wires with a boundary endpoint
/// (input-to-output wires collapse to one isolated wire-vertex), two on
/// circles. Surviving vertices keep their ids, so the map is idempotent.
LabeledGraph homeo_normal_form(const LabeledGraph& g);

// Ingestion helper: replaces each self-loop by a wire through a fresh
// wire-vertex, yielding a wire-homeomorphic graph without self-loops.
LabeledGraph split_self_loops(const std::vector<std::pair<VertexId, Label>>& vertices,
                              const std::vector<Edge>& edges);

}  // namespace bangnce
