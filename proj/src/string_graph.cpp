#include "bangnce/string_graph.hpp"

#include <algorithm>

namespace bangnce {

std::string Violation::message() const {
  switch (kind) {
    case Kind::NodeNodeEdge:
      return "edge " + to_string(*edge) + " joins two node-vertices";
    case Kind::WireInDegree:
      return "wire-vertex '" + *vertex + "' has in-degree > 1";
    case Kind::WireOutDegree:
      return "wire-vertex '" + *vertex + "' has out-degree > 1";
    case Kind::NonStringLabel:
      return "vertex '" + *vertex + "' carries a non-string-graph label";
  }
  return "unknown violation";
}

ValidationReport validate_string_graph(const LabeledGraph& g) {
  ValidationReport report;
  for (const auto& [id, l] : g.vertices()) {
    if (!is_terminal_label(l)) {
      report.violations.push_back({Violation::Kind::NonStringLabel, id, std::nullopt});
    }
  }
  for (const auto& e : g.edges()) {
    if (is_node_label(g.label(e.src)) && is_node_label(g.label(e.tgt))) {
      report.violations.push_back({Violation::Kind::NodeNodeEdge, std::nullopt, e});
    }
  }
  for (const auto& [id, l] : g.vertices()) {
    if (!is_wire_label(l)) continue;
    if (g.in_degree(id) > 1) {
      report.violations.push_back({Violation::Kind::WireInDegree, id, std::nullopt});
    }
    if (g.out_degree(id) > 1) {
      report.violations.push_back({Violation::Kind::WireOutDegree, id, std::nullopt});
    }
  }
  return report;
}

void require_string_graph(const LabeledGraph& g) {
  auto report = validate_string_graph(g);
  if (!report.ok()) {
    throw GraphError("not a string graph: " + report.violations.front().message());
  }
}

Boundary boundary(const LabeledGraph& g) {
  require_string_graph(g);
  Boundary b;
  for (const auto& [id, l] : g.vertices()) {
    if (!is_wire_label(l)) continue;
    if (g.in_degree(id) == 0) b.inputs.insert(id);
    if (g.out_degree(id) == 0) b.outputs.insert(id);
  }
  return b;
}

std::vector<VertexId> Wire::interior() const {
  if (kind == WireKind::Circle) return vertices;
  if (vertices.size() <= 2) return {};
  return {vertices.begin() + 1, vertices.end() - 1};
}

std::vector<VertexId> Wire::wire_vertices(const LabeledGraph& g) const {
  std::vector<VertexId> out;
  for (const auto& v : vertices) {
    if (is_wire_label(g.label(v)) &&
        std::find(out.begin(), out.end(), v) == out.end()) {
      out.push_back(v);
    }
  }
  return out;
}

namespace {

const VertexId& successor(const LabeledGraph& g, const VertexId& v) {
  return g.out_edges(v).begin()->tgt;
}

// Follows wire-vertices forward from `start` until a node-vertex or an
// output is reached.
Wire walk_from(const LabeledGraph& g, std::vector<VertexId> prefix,
               const VertexId& start, std::set<VertexId>& visited) {
  Wire w;
  w.vertices = std::move(prefix);
  VertexId cur = start;
  while (true) {
    w.vertices.push_back(cur);
    if (is_node_label(g.label(cur))) break;
    visited.insert(cur);
    if (g.out_degree(cur) == 0) break;
    cur = successor(g, cur);
  }
  return w;
}

}  // namespace

std::vector<Wire> decompose_wires(const LabeledGraph& g) {
  require_string_graph(g);
  std::vector<Wire> wires;
  std::set<VertexId> visited;
  for (const auto& [id, l] : g.vertices()) {
    if (!is_node_label(l)) continue;
    for (const auto& e : g.out_edges(id)) {
      wires.push_back(walk_from(g, {id}, e.tgt, visited));
    }
  }
  for (const auto& [id, l] : g.vertices()) {
    if (is_wire_label(l) && !visited.count(id) && g.in_degree(id) == 0) {
      wires.push_back(walk_from(g, {}, id, visited));
    }
  }
  for (const auto& [id, l] : g.vertices()) {
    if (!is_wire_label(l) || visited.count(id)) continue;
    Wire circle;
    circle.kind = WireKind::Circle;
    VertexId cur = id;
    do {
      circle.vertices.push_back(cur);
      visited.insert(cur);
      cur = successor(g, cur);
    } while (cur != id);
    wires.push_back(std::move(circle));
  }
  return wires;
}

Wire wire_of(const LabeledGraph& g, const VertexId& v) {
  if (!is_wire_label(g.label(v))) throw GraphError("'" + v + "' is not a wire-vertex");
  for (auto& w : decompose_wires(g)) {
    auto wv = w.wire_vertices(g);
    if (std::find(wv.begin(), wv.end(), v) != wv.end()) return w;
  }
  throw GraphError("wire-vertex '" + v + "' belongs to no wire");
}

namespace {

const Label& edge_label_between(const LabeledGraph& g, const VertexId& a,
                                const VertexId& b) {
  for (const auto& e : g.out_edges(a)) {
    if (e.tgt == b) return e.label;
  }
  throw GraphError("no edge between consecutive wire vertices");
}

}  // namespace

LabeledGraph homeo_normal_form(const LabeledGraph& g) {
  auto wires = decompose_wires(g);
  LabeledGraph nf;
  for (const auto& [id, l] : g.vertices()) {
    if (is_node_label(l)) nf.add_vertex(id, l);
  }
  const Label wire_label(kWireLabel);
  for (const auto& w : wires) {
    const auto& vs = w.vertices;
    if (w.kind == WireKind::Circle) {
      const auto& a = vs[0];
      const auto& b = vs[1];
      nf.add_vertex(a, wire_label);
      nf.add_vertex(b, wire_label);
      nf.add_edge(a, edge_label_between(g, a, b), b);
      nf.add_edge(b, edge_label_between(g, vs.back(), a), a);
      continue;
    }
    const auto& src = w.source();
    const auto& tgt = w.target();
    bool src_node = is_node_label(g.label(src));
    bool tgt_node = is_node_label(g.label(tgt));
    if (src_node && tgt_node) {
      const auto& mid = vs[1];
      nf.add_vertex(mid, wire_label);
      nf.add_edge(src, edge_label_between(g, src, vs[1]), mid);
      nf.add_edge(mid, edge_label_between(g, vs[vs.size() - 2], tgt), tgt);
    } else if (!src_node && tgt_node) {
      nf.add_vertex(src, wire_label);
      nf.add_edge(src, edge_label_between(g, vs[vs.size() - 2], tgt), tgt);
    } else if (src_node && !tgt_node) {
      nf.add_vertex(tgt, wire_label);
      nf.add_edge(src, edge_label_between(g, src, vs[1]), tgt);
    } else {
      nf.add_vertex(src, wire_label);
    }
  }
  return nf;
}

LabeledGraph split_self_loops(const std::vector<std::pair<VertexId, Label>>& vertices,
                              const std::vector<Edge>& edges) {
  LabeledGraph g;
  for (const auto& [id, l] : vertices) g.add_vertex(id, l);
  int fresh = 0;
  for (const auto& e : edges) {
    if (e.src != e.tgt) {
      g.add_edge(e);
      continue;
    }
    VertexId mid;
    do {
      mid = e.src + "~loop" + std::to_string(fresh++);
    } while (g.has_vertex(mid));
    g.add_vertex(mid, Label(kWireLabel));
    g.add_edge(e.src, e.label, mid);
    g.add_edge(mid, e.label, e.src);
  }
  return g;
}

}  // namespace bangnce
