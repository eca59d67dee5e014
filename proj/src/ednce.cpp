#include <map>
#include <tuple>

#include "bangnce/ednce.hpp"

namespace bangnce {

std::string_view to_string(Direction d) { return d == Direction::In ? "in" : "out"; }

void GraphWithEmbedding::validate() const {
  for (const auto& c : connections) {
    if (!graph.has_vertex(c.attach)) {
      throw GrammarError("connection instruction attaches to unknown vertex '" + c.attach + "'");
    }
  }
}

GraphWithEmbedding substitute(const GraphWithEmbedding& host, const VertexId& v,
                              const GraphWithEmbedding& body) {
  if (!host.graph.has_vertex(v)) throw GrammarError("substituted vertex '" + v + "' not in host");
  for (const auto& [id, _] : body.graph.vertices()) {
    if (host.graph.has_vertex(id)) {
      throw GrammarError("host and body share vertex id '" + id + "'");
    }
  }

  // (direction, neighbour label, old label) -> (new label, attach vertex)
  std::multimap<std::tuple<Direction, Label, Label>, std::pair<Label, VertexId>> by_key;
  for (const auto& c : body.connections) {
    by_key.emplace(std::tuple{c.dir, c.neighbor, c.old_label}, std::pair{c.new_label, c.attach});
  }

  GraphWithEmbedding out;
  out.graph = host.graph.without({v});
  out.graph.add_disjoint(body.graph);
  for (const auto& e : host.graph.in_edges(v)) {
    auto [lo, hi] = by_key.equal_range({Direction::In, host.graph.label(e.src), e.label});
    for (auto it = lo; it != hi; ++it) out.graph.add_edge(e.src, it->second.first, it->second.second);
  }
  for (const auto& e : host.graph.out_edges(v)) {
    auto [lo, hi] = by_key.equal_range({Direction::Out, host.graph.label(e.tgt), e.label});
    for (auto it = lo; it != hi; ++it) out.graph.add_edge(it->second.second, it->second.first, e.tgt);
  }

  for (const auto& c : host.connections) {
    if (c.attach != v) {
      out.connections.insert(c);
      continue;
    }
    auto [lo, hi] = by_key.equal_range({c.dir, c.neighbor, c.new_label});
    for (auto it = lo; it != hi; ++it) {
      out.connections.insert({c.neighbor, c.old_label, it->second.first, it->second.second, c.dir});
    }
  }
  return out;
}

std::vector<VertexId> Grammar::nonterminals(const LabeledGraph& g) const {
  std::vector<VertexId> out;
  for (const auto& [id, l] : g.vertices()) {
    if (!is_terminal(l)) out.push_back(id);
  }
  return out;
}

void Grammar::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw GrammarError(what);
  };
  for (const auto& l : delta) require(sigma.count(l), "terminal label '" + l + "' not in sigma");
  for (const auto& l : omega) require(gamma.count(l), "final edge label '" + l + "' not in gamma");
  require(sigma.count(initial) && !delta.count(initial),
          "initial label '" + initial + "' must be a nonterminal of sigma");
  for (const auto& p : productions) {
    const std::string where = "production '" + p.name + "': ";
    require(sigma.count(p.lhs) && !delta.count(p.lhs), where + "left side must be a nonterminal");
    for (const auto& [id, l] : p.body.graph.vertices()) {
      require(sigma.count(l), where + "vertex label '" + l + "' not in sigma");
    }
    for (const auto& e : p.body.graph.edges()) {
      require(gamma.count(e.label), where + "edge label '" + e.label + "' not in gamma");
    }
    for (const auto& c : p.body.connections) {
      require(sigma.count(c.neighbor), where + "instruction label '" + c.neighbor + "' not in sigma");
      require(gamma.count(c.old_label) && gamma.count(c.new_label),
              where + "instruction edge label not in gamma");
      require(p.body.graph.has_vertex(c.attach),
              where + "instruction attaches to unknown vertex '" + c.attach + "'");
    }
  }
}

GraphWithEmbedding starting_graph(const Grammar& g, const VertexId& z) {
  GraphWithEmbedding s;
  s.graph.add_vertex(z, g.initial);
  return s;
}

SententialForm start_form(const Grammar& g) { return {starting_graph(g), {}}; }

SententialForm derive_step(const Grammar& g, const SententialForm& form, const VertexId& v,
                           std::size_t production) {
  if (production >= g.productions.size()) throw GrammarError("production index out of range");
  const auto& p = g.productions[production];
  if (!form.form.graph.has_vertex(v)) throw GrammarError("vertex '" + v + "' not in sentential form");
  if (form.form.graph.label(v) != p.lhs) {
    throw GrammarError("vertex '" + v + "' is labelled '" + form.form.graph.label(v) +
                       "', production '" + p.name + "' rewrites '" + p.lhs + "'");
  }
  const std::string prefix = std::to_string(form.trace.size() + 1) + ".";
  GraphWithEmbedding fresh;
  fresh.graph = p.body.graph.with_prefix(prefix);
  for (auto c : p.body.connections) {
    c.attach = prefix + c.attach;
    fresh.connections.insert(std::move(c));
  }
  SententialForm next{substitute(form.form, v, fresh), form.trace};
  next.trace.push_back({v, production});
  return next;
}

SententialForm replay(const Grammar& g, const std::vector<DerivationStep>& trace) {
  SententialForm f = start_form(g);
  for (const auto& s : trace) f = derive_step(g, f, s.vertex, s.production);
  return f;
}

bool is_linear(const Grammar& g) {
  for (const auto& p : g.productions) {
    if (g.nonterminals(p.body.graph).size() > 1) return false;
  }
  return true;
}

}  // namespace bangnce
