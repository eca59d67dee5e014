#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bangnce {

using VertexId = std::string;
using Label = std::string;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::string_view kWireLabel = "W";
inline constexpr std::string_view kNodeLabel = "N";
// The single edge label carried by string-graph edges.
inline constexpr std::string_view kPlainEdge = "e";

enum class LabelKind { Wire, Node, Nonterminal };

// "W" is a wire-vertex, "N" and "N:<tag>" are node-vertices, anything else
// is a nonterminal.
LabelKind label_kind(std::string_view label);
inline bool is_wire_label(std::string_view l) { return label_kind(l) == LabelKind::Wire; }
inline bool is_node_label(std::string_view l) { return label_kind(l) == LabelKind::Node; }
inline bool is_terminal_label(std::string_view l) {
  return label_kind(l) != LabelKind::Nonterminal;
}

struct Edge {
  VertexId src;
  Label label;
  VertexId tgt;

  auto operator<=>(const Edge&) const = default;
};

/// Directed, edge-labelled, node-labelled simple graph without self-loops.
///
/// Vertex ids are opaque strings. The edge set has set semantics: adding an
/// edge that is already present is a no-op.
class LabeledGraph {
 public:
  LabeledGraph() = default;

  void add_vertex(const VertexId& id, const Label& label);
  void add_edge(const VertexId& src, const Label& label, const VertexId& tgt);
  void add_edge(const Edge& e) { add_edge(e.src, e.label, e.tgt); }
  // Removes the vertex together with its incident edges.
  void remove_vertex(const VertexId& id);
  void remove_edge(const Edge& e);
  // Adds every vertex and edge of `other`; vertex ids must be disjoint.
  void add_disjoint(const LabeledGraph& other);

  bool has_vertex(const VertexId& id) const { return labels_.count(id) != 0; }
  bool has_edge(const Edge& e) const { return edges_.count(e) != 0; }
  const Label& label(const VertexId& id) const;

  const std::map<VertexId, Label>& vertices() const { return labels_; }
  const std::set<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::set<Edge>& out_edges(const VertexId& id) const;
  const std::set<Edge>& in_edges(const VertexId& id) const;
  std::size_t out_degree(const VertexId& id) const { return out_edges(id).size(); }
  std::size_t in_degree(const VertexId& id) const { return in_edges(id).size(); }

  std::set<VertexId> vertex_ids() const;
  // Full subgraph on `keep`; ids outside the graph are ignored.
  LabeledGraph induced(const std::set<VertexId>& keep) const;
  // Graph with `drop` and all incident edges deleted.
  LabeledGraph without(const std::set<VertexId>& drop) const;
  // Copy with every vertex id rewritten by prefixing.
  LabeledGraph with_prefix(std::string_view prefix) const;

  bool operator==(const LabeledGraph& other) const {
    return labels_ == other.labels_ && edges_ == other.edges_;
  }

 private:
  std::map<VertexId, Label> labels_;
  std::set<Edge> edges_;
  std::map<VertexId, std::set<Edge>> out_;
  std::map<VertexId, std::set<Edge>> in_;
};

std::string to_string(const Edge& e);

}  // namespace bangnce
