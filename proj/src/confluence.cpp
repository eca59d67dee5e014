#include "bangnce/ednce.hpp"

namespace bangnce {

namespace {

GraphWithEmbedding prefixed(const GraphWithEmbedding& body, const std::string& prefix) {
  GraphWithEmbedding out;
  out.graph = body.graph.with_prefix(prefix);
  for (auto c : body.connections) {
    c.attach = prefix + c.attach;
    out.connections.insert(std::move(c));
  }
  return out;
}

}  // namespace

bool pairwise_confluent(const Grammar& g) {
  // Connection instructions act edge by edge, so one edge between the two
  // nonterminals at a time covers every host configuration.
  for (const auto& p1 : g.productions) {
    for (const auto& p2 : g.productions) {
      const auto d1 = prefixed(p1.body, "1:");
      const auto d2 = prefixed(p2.body, "2:");
      for (const auto& label : g.gamma) {
        for (bool forward : {true, false}) {
          GraphWithEmbedding host;
          host.graph.add_vertex("u1", p1.lhs);
          host.graph.add_vertex("u2", p2.lhs);
          if (forward) {
            host.graph.add_edge("u1", label, "u2");
          } else {
            host.graph.add_edge("u2", label, "u1");
          }
          auto h12 = substitute(substitute(host, "u1", d1), "u2", d2);
          auto h21 = substitute(substitute(host, "u2", d2), "u1", d1);
          if (!(h12 == h21)) return false;
        }
      }
    }
  }
  return true;
}

bool is_confluent(const Grammar& g) { return is_linear(g) || pairwise_confluent(g); }

}  // namespace bangnce
