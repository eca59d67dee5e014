#include "bangnce/lang_equiv.hpp"

#include <deque>
#include <map>

#include "bangnce/compiler.hpp"

namespace bangnce {

LabeledGraph wire_decode(const LabeledGraph& g) {
  LabeledGraph out;
  for (const auto& [id, l] : g.vertices()) out.add_vertex(id, l);
  for (const auto& e : g.edges()) {
    if (!AlphaLabeling::is_beta(e.label)) {
      out.add_edge(e);
      continue;
    }
    if (!is_node_label(g.label(e.src)) || !is_node_label(g.label(e.tgt))) {
      throw GraphError("encoded edge " + to_string(e) + " touches a non-node vertex");
    }
    VertexId w = e.src + "~" + e.label + "~" + e.tgt;
    while (out.has_vertex(w) || g.has_vertex(w)) w += "~";
    out.add_vertex(w, Label(kWireLabel));
    out.add_edge(e.src, Label(kPlainEdge), w);
    out.add_edge(w, Label(kPlainEdge), e.tgt);
  }
  return out;
}

std::string_view to_string(EquivalenceMode m) {
  switch (m) {
    case EquivalenceMode::Iso: return "iso";
    case EquivalenceMode::Homeo: return "homeo";
    case EquivalenceMode::Wire: return "wire";
  }
  return "?";
}

std::optional<EquivalenceMode> parse_mode(std::string_view s) {
  if (s == "iso") return EquivalenceMode::Iso;
  if (s == "homeo") return EquivalenceMode::Homeo;
  if (s == "wire" || s == "wire-encoding") return EquivalenceMode::Wire;
  return std::nullopt;
}

IsoClassSet normalize(const IsoClassSet& s, EquivalenceMode mode, bool encoded) {
  if (mode == EquivalenceMode::Iso) return s;
  IsoClassSet out;
  for (const auto& [_, g] : s) {
    const LabeledGraph& h = g;
    out.insert(homeo_normal_form(encoded && mode == EquivalenceMode::Wire ? wire_decode(h) : h));
  }
  return out;
}

EquivalenceResult equal_up_to(const IsoClassSet& a, const IsoClassSet& b, EquivalenceMode mode,
                              std::size_t witnesses) {
  const auto na = normalize(a, mode, false);
  const auto nb = normalize(b, mode, true);
  EquivalenceResult r;
  for (const auto& [k, g] : na) {
    if (!nb.contains_key(k) && r.diff.only_in_a.size() < witnesses) r.diff.only_in_a.push_back(g);
  }
  for (const auto& [k, g] : nb) {
    if (!na.contains_key(k) && r.diff.only_in_b.size() < witnesses) r.diff.only_in_b.push_back(g);
  }
  r.equal = r.diff.empty();
  return r;
}

int max_distance(const LabeledGraph& g, bool directed) {
  if (g.vertex_count() < 2) return 0;
  int best = -1;
  for (const auto& [s, _] : g.vertices()) {
    std::map<VertexId, int> dist{{s, 0}};
    std::deque<VertexId> queue{s};
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      auto visit = [&](const VertexId& w) {
        if (dist.emplace(w, dist[v] + 1).second) queue.push_back(w);
      };
      for (const auto& e : g.out_edges(v)) visit(e.tgt);
      if (!directed) {
        for (const auto& e : g.in_edges(v)) visit(e.src);
      }
    }
    for (const auto& [v, d] : dist) {
      if (v != s) best = std::max(best, d);
    }
  }
  return best;
}

bool strictly_growing_tail(const std::vector<int>& maxima) {
  if (maxima.size() < 3) return false;
  auto n = maxima.size();
  return maxima[n - 3] < maxima[n - 2] && maxima[n - 2] < maxima[n - 1];
}

namespace {

template <typename Enumerate>
DistanceProfile probe(const std::vector<int>& strata, bool directed, Enumerate enumerate) {
  if (strata.size() < 3) throw Error("boundedness probe needs at least three strata");
  DistanceProfile p;
  p.strata = strata;
  for (int s : strata) {
    IsoClassSet slice = enumerate(s);
    int m = -1;
    for (const auto& [_, g] : slice) m = std::max(m, max_distance(g, directed));
    p.maxima.push_back(m);
    p.sizes.push_back(slice.size());
  }
  p.growing = strictly_growing_tail(p.maxima);
  return p;
}

}  // namespace

DistanceProfile boundedness_probe(const BangGraph& g, const std::vector<int>& op_strata, int max_vertices,
                                  bool directed) {
  return probe(op_strata, directed,
               [&](int ops) { return enumerate_language(g, {ops, max_vertices}); });
}

DistanceProfile boundedness_probe(const Grammar& g, const std::vector<int>& step_strata, int max_vertices,
                                  bool directed) {
  return probe(step_strata, directed,
               [&](int steps) { return enumerate_grammar_language(g, {steps, max_vertices}); });
}

}  // namespace bangnce
