#include "bangnce/graph.hpp"

namespace bangnce {

LabelKind label_kind(std::string_view label) {
  if (label == kWireLabel) return LabelKind::Wire;
  if (label == kNodeLabel || label.starts_with("N:")) return LabelKind::Node;
  return LabelKind::Nonterminal;
}

namespace {
const std::set<Edge> kNoEdges;
}

void LabeledGraph::add_vertex(const VertexId& id, const Label& label) {
  if (id.empty()) throw GraphError("vertex id must be non-empty");
  if (!labels_.emplace(id, label).second) {
    throw GraphError("duplicate vertex id '" + id + "'");
  }
}

void LabeledGraph::add_edge(const VertexId& src, const Label& label,
                            const VertexId& tgt) {
  if (src == tgt) throw GraphError("self-loop on vertex '" + src + "'");
  if (!has_vertex(src)) throw GraphError("edge source '" + src + "' is not a vertex");
  if (!has_vertex(tgt)) throw GraphError("edge target '" + tgt + "' is not a vertex");
  Edge e{src, label, tgt};
  if (edges_.insert(e).second) {
    out_[src].insert(e);
    in_[tgt].insert(e);
  }
}

void LabeledGraph::remove_edge(const Edge& e) {
  if (edges_.erase(e) == 0) return;
  out_[e.src].erase(e);
  in_[e.tgt].erase(e);
}

void LabeledGraph::remove_vertex(const VertexId& id) {
  if (labels_.erase(id) == 0) throw GraphError("unknown vertex '" + id + "'");
  std::vector<Edge> incident;
  if (auto it = out_.find(id); it != out_.end()) {
    incident.insert(incident.end(), it->second.begin(), it->second.end());
  }
  if (auto it = in_.find(id); it != in_.end()) {
    incident.insert(incident.end(), it->second.begin(), it->second.end());
  }
  for (const auto& e : incident) remove_edge(e);
  out_.erase(id);
  in_.erase(id);
}

void LabeledGraph::add_disjoint(const LabeledGraph& other) {
  for (const auto& [id, _] : other.labels_) {
    if (has_vertex(id)) throw GraphError("vertex id collision on '" + id + "'");
  }
  for (const auto& [id, l] : other.labels_) labels_.emplace(id, l);
  for (const auto& e : other.edges_) add_edge(e);
}

const Label& LabeledGraph::label(const VertexId& id) const {
  auto it = labels_.find(id);
  if (it == labels_.end()) throw GraphError("unknown vertex '" + id + "'");
  return it->second;
}

const std::set<Edge>& LabeledGraph::out_edges(const VertexId& id) const {
  auto it = out_.find(id);
  return it == out_.end() ? kNoEdges : it->second;
}

const std::set<Edge>& LabeledGraph::in_edges(const VertexId& id) const {
  auto it = in_.find(id);
  return it == in_.end() ? kNoEdges : it->second;
}

std::set<VertexId> LabeledGraph::vertex_ids() const {
  std::set<VertexId> ids;
  for (const auto& [id, _] : labels_) ids.insert(ids.end(), id);
  return ids;
}

LabeledGraph LabeledGraph::induced(const std::set<VertexId>& keep) const {
  LabeledGraph g;
  for (const auto& [id, l] : labels_) {
    if (keep.count(id)) g.labels_.emplace(id, l);
  }
  for (const auto& e : edges_) {
    if (keep.count(e.src) && keep.count(e.tgt)) g.add_edge(e);
  }
  return g;
}

LabeledGraph LabeledGraph::without(const std::set<VertexId>& drop) const {
  LabeledGraph g;
  for (const auto& [id, l] : labels_) {
    if (!drop.count(id)) g.labels_.emplace(id, l);
  }
  for (const auto& e : edges_) {
    if (!drop.count(e.src) && !drop.count(e.tgt)) g.add_edge(e);
  }
  return g;
}

LabeledGraph LabeledGraph::with_prefix(std::string_view prefix) const {
  LabeledGraph g;
  std::string p(prefix);
  for (const auto& [id, l] : labels_) g.labels_.emplace(p + id, l);
  for (const auto& e : edges_) g.add_edge(p + e.src, e.label, p + e.tgt);
  return g;
}

std::string to_string(const Edge& e) {
  return "(" + e.src + " -" + e.label + "-> " + e.tgt + ")";
}

}  // namespace bangnce
