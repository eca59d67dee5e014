#include "bangnce/bang_graph.hpp"

#include <algorithm>

#include "bangnce/isomorphism.hpp"

namespace bangnce {

void BangGraph::add_box(const BoxId& id, std::set<VertexId> contents,
                        const std::set<BoxId>& parents) {
  if (id.empty()) throw BoxError("box id must be non-empty");
  if (has_box(id)) throw BoxError("duplicate box id '" + id + "'");
  for (const auto& v : contents) {
    if (!base_.has_vertex(v)) throw BoxError("box '" + id + "' contains unknown vertex '" + v + "'");
  }
  Box b{std::move(contents), {}};
  for (const auto& p : parents) {
    b.ancestors.insert(p);
    const auto& up = box(p).ancestors;
    b.ancestors.insert(up.begin(), up.end());
  }
  boxes_.emplace(id, std::move(b));
}

const BangGraph::Box& BangGraph::box(const BoxId& b) const {
  auto it = boxes_.find(b);
  if (it == boxes_.end()) throw BoxError("unknown box '" + b + "'");
  return it->second;
}

std::set<BoxId> BangGraph::descendants(const BoxId& b) const {
  box(b);
  std::set<BoxId> out;
  for (const auto& [id, bx] : boxes_) {
    if (bx.ancestors.count(b)) out.insert(id);
  }
  return out;
}

bool BangGraph::nested(const BoxId& inner, const BoxId& outer) const {
  return inner == outer ? has_box(inner) : box(inner).ancestors.count(outer) != 0;
}

std::vector<BoxId> BangGraph::top_level() const {
  std::vector<BoxId> out;
  for (const auto& [id, bx] : boxes_) {
    if (bx.ancestors.empty()) out.push_back(id);
  }
  return out;
}

std::set<BoxId> BangGraph::boxes_containing(const VertexId& v) const {
  std::set<BoxId> out;
  for (const auto& [id, bx] : boxes_) {
    if (bx.contents.count(v)) out.insert(id);
  }
  return out;
}

std::set<VertexId> BangGraph::boxed_vertices() const {
  std::set<VertexId> out;
  for (const auto& [_, bx] : boxes_) out.insert(bx.contents.begin(), bx.contents.end());
  return out;
}

std::vector<std::string> BangGraph::violations() const {
  std::vector<std::string> out;
  auto report = validate_string_graph(base_);
  for (const auto& v : report.violations) out.push_back(v.message());
  if (!report.ok()) return out;
  for (const auto& [id, bx] : boxes_) {
    for (const auto& v : bx.contents) {
      if (!base_.has_vertex(v)) out.push_back("box '" + id + "' contains unknown vertex '" + v + "'");
    }
    if (!is_open(base_, bx.contents)) out.push_back("box '" + id + "' is not an open subgraph");
    for (const auto& a : bx.ancestors) {
      const auto& outer = box(a).contents;
      if (!std::includes(outer.begin(), outer.end(), bx.contents.begin(), bx.contents.end())) {
        out.push_back("box '" + id + "' is nested in '" + a + "' but not contained in it");
      }
      if (box(a).ancestors.count(id)) out.push_back("nesting cycle between '" + id + "' and '" + a + "'");
    }
  }
  return out;
}

void BangGraph::validate() const {
  auto v = violations();
  if (!v.empty()) throw BoxError("invalid !-graph: " + v.front());
}

bool is_open(const LabeledGraph& h, const std::set<VertexId>& subgraph) {
  for (const auto& v : subgraph) {
    if (!h.has_vertex(v)) throw GraphError("open-subgraph vertex '" + v + "' not in graph");
  }
  auto whole = boundary(h);
  auto rest = boundary(h.without(subgraph));
  return std::includes(whole.inputs.begin(), whole.inputs.end(), rest.inputs.begin(),
                       rest.inputs.end()) &&
         std::includes(whole.outputs.begin(), whole.outputs.end(), rest.outputs.begin(),
                       rest.outputs.end());
}

bool OverlapReport::all_trivial() const {
  return std::all_of(pairs.begin(), pairs.end(),
                     [](const auto& p) { return p.kind == OverlapKind::Trivial; });
}

const BoxPairOverlap* OverlapReport::find(const BoxId& a, const BoxId& b) const {
  for (const auto& p : pairs) {
    if ((p.first == a && p.second == b) || (p.first == b && p.second == a)) return &p;
  }
  return nullptr;
}

OverlapReport classify_overlap(const BangGraph& g) {
  const auto& base = g.base();
  auto wires = decompose_wires(base);
  std::map<VertexId, std::size_t> wire_index;
  for (std::size_t i = 0; i < wires.size(); ++i) {
    for (const auto& v : wires[i].wire_vertices(base)) wire_index.emplace(v, i);
  }

  OverlapReport report;
  for (auto a = g.boxes().begin(); a != g.boxes().end(); ++a) {
    for (auto b = std::next(a); b != g.boxes().end(); ++b) {
      if (g.nested(a->first, b->first) || g.nested(b->first, a->first)) continue;
      BoxPairOverlap pair{a->first, b->first};
      const auto& ca = a->second.contents;
      const auto& cb = b->second.contents;
      std::set<VertexId> shared;
      std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(),
                            std::inserter(shared, shared.end()));
      std::set<std::size_t> accepted;
      for (const auto& v : shared) {
        bool ok = false;
        if (is_wire_label(base.label(v))) {
          std::size_t wi = wire_index.at(v);
          const Wire& w = wires[wi];
          auto interior = w.interior();
          bool closed_between_nodes = w.kind == WireKind::Closed &&
                                      is_node_label(base.label(w.source())) &&
                                      is_node_label(base.label(w.target()));
          auto only_in = [&](const VertexId& x, const std::set<VertexId>& in,
                             const std::set<VertexId>& out) {
            return in.count(x) && !out.count(x);
          };
          bool straddles =
              closed_between_nodes &&
              ((only_in(w.source(), ca, cb) && only_in(w.target(), cb, ca)) ||
               (only_in(w.source(), cb, ca) && only_in(w.target(), ca, cb)));
          bool whole_interior = std::all_of(interior.begin(), interior.end(),
                                            [&](const VertexId& x) { return shared.count(x); });
          ok = straddles && whole_interior;
          if (ok && accepted.insert(wi).second) pair.shared_wires.push_back(w);
        }
        if (!ok) pair.offending.insert(v);
      }
      if (!pair.offending.empty()) {
        pair.kind = OverlapKind::Nontrivial;
        pair.shared_wires.clear();
      }
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

bool is_bgto(const BangGraph& g) { return classify_overlap(g).all_trivial(); }

BangGraph kill(const BangGraph& g, const BoxId& b) {
  auto removed = g.descendants(b);
  removed.insert(b);
  const auto drop = g.contents(b);
  BangGraph out(g.base().without(drop));
  for (const auto& [id, bx] : g.boxes()) {
    if (removed.count(id)) continue;
    BangGraph::Box nb;
    std::set_difference(bx.contents.begin(), bx.contents.end(), drop.begin(), drop.end(),
                        std::inserter(nb.contents, nb.contents.end()));
    std::set_difference(bx.ancestors.begin(), bx.ancestors.end(), removed.begin(),
                        removed.end(), std::inserter(nb.ancestors, nb.ancestors.end()));
    out.boxes_.emplace(id, std::move(nb));
  }
  return out;
}

BangGraph expand(const BangGraph& g, const BoxId& b) {
  const auto& src = g.contents(b);
  const auto inner = g.descendants(b);

  auto suffix_for = [&](int k) { return "!" + b + "!" + std::to_string(k); };
  int k = 1;
  while (true) {
    auto sfx = suffix_for(k);
    bool clash = std::any_of(src.begin(), src.end(),
                             [&](const VertexId& v) { return g.base().has_vertex(v + sfx); }) ||
                 std::any_of(inner.begin(), inner.end(),
                             [&](const BoxId& d) { return g.has_box(d + sfx); });
    if (!clash) break;
    ++k;
  }
  const auto sfx = suffix_for(k);
  auto copy = [&](const VertexId& v) { return src.count(v) ? v + sfx : v; };

  LabeledGraph base = g.base();
  for (const auto& v : src) base.add_vertex(v + sfx, g.base().label(v));
  for (const auto& e : g.base().edges()) {
    if (src.count(e.src) || src.count(e.tgt)) base.add_edge(copy(e.src), e.label, copy(e.tgt));
  }

  BangGraph out(std::move(base));
  for (const auto& [id, bx] : g.boxes()) {
    BangGraph::Box nb = bx;
    if (id != b && !inner.count(id)) {
      for (const auto& v : bx.contents) {
        if (src.count(v)) nb.contents.insert(v + sfx);
      }
    }
    out.boxes_.emplace(id, std::move(nb));
  }
  for (const auto& d : inner) {
    const auto& bx = g.boxes().at(d);
    BangGraph::Box nb;
    for (const auto& v : bx.contents) nb.contents.insert(v + sfx);
    for (const auto& a : bx.ancestors) {
      if (a == b) continue;
      nb.ancestors.insert(inner.count(a) ? a + sfx : a);
    }
    out.boxes_.emplace(d + sfx, std::move(nb));
  }
  return out;
}

std::string bang_key(const BangGraph& g) {
  // Boxes become extra vertices: membership edges point at contents and
  // nesting edges at strict ancestors.
  LabeledGraph aug = g.base().with_prefix("v:");
  const Label box_label = "\x01!box";
  for (const auto& [id, _] : g.boxes()) aug.add_vertex("b:" + id, box_label);
  for (const auto& [id, bx] : g.boxes()) {
    for (const auto& v : bx.contents) aug.add_edge("b:" + id, "\x01in", "v:" + v);
    for (const auto& a : bx.ancestors) aug.add_edge("b:" + id, "\x01le", "b:" + a);
  }
  return canonical_key(aug);
}

}  // namespace bangnce
