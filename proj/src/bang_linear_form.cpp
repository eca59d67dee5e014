#include <algorithm>
#include <deque>
#include <unordered_set>

#include "bangnce/compiler.hpp"
#include "bangnce/isomorphism.hpp"

namespace bangnce {

namespace {

std::set<Label> alpha_family(const Grammar& g) {
  std::set<Label> out;
  std::set_difference(g.gamma.begin(), g.gamma.end(), g.omega.begin(), g.omega.end(),
                      std::inserter(out, out.end()));
  return out;
}

// Checks the tether of condition 3 on one graph with a single nonterminal.
void check_tether(const Grammar& g, const LabeledGraph& form, const VertexId& x,
                  const std::set<Label>& alphas, const std::string& where,
                  std::vector<LinearFormReport::Item>& out) {
  for (const auto& e : form.in_edges(x)) {
    if (!alphas.count(e.label)) out.push_back({3, where + ": nonterminal has non-alpha edge " + to_string(e)});
  }
  for (const auto& e : form.out_edges(x)) {
    if (!alphas.count(e.label)) out.push_back({3, where + ": nonterminal has non-alpha edge " + to_string(e)});
  }
  for (const auto& [id, l] : form.vertices()) {
    if (!g.is_terminal(l)) continue;
    auto tethered = [&](const std::set<Edge>& edges, bool outgoing) {
      return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
        return (outgoing ? e.tgt : e.src) == x && alphas.count(e.label);
      });
    };
    if (!tethered(form.out_edges(id), true) || !tethered(form.in_edges(id), false)) {
      out.push_back({3, where + ": terminal '" + id + "' is not tethered to the nonterminal in both directions"});
    }
  }
}

}  // namespace

bool LinearFormReport::holds(int condition) const {
  return std::none_of(violations.begin(), violations.end(),
                      [&](const Item& i) { return i.condition == condition; });
}

Label final_nonterminal(const Grammar& g) {
  const Production* found = nullptr;
  for (const auto& p : g.productions) {
    if (!g.nonterminals(p.body.graph).empty()) continue;
    if (found) throw GrammarError("grammar has more than one final production");
    found = &p;
  }
  if (!found || !found->body.graph.empty()) throw GrammarError("grammar has no empty final production");
  return found->lhs;
}

LinearFormReport check_bang_linear_form(const Grammar& g, const LinearFormOptions& options) {
  LinearFormReport report;
  auto& out = report.violations;
  const auto alphas = alpha_family(g);

  if (!is_linear(g)) out.push_back({1, "some production body has more than one nonterminal"});

  int finals = 0;
  for (const auto& p : g.productions) {
    if (!g.nonterminals(p.body.graph).empty()) continue;
    ++finals;
    if (!p.body.graph.empty()) out.push_back({2, "final production '" + p.name + "' has a non-empty body"});
  }
  if (finals != 1) out.push_back({2, std::to_string(finals) + " final productions"});

  std::map<Label, std::set<std::pair<std::size_t, VertexId>>> owners;
  for (std::size_t i = 0; i < g.productions.size(); ++i) {
    const auto& p = g.productions[i];
    const auto& body = p.body.graph;
    for (const auto& e : body.edges()) {
      if (!alphas.count(e.label)) continue;
      for (const auto& end : {e.src, e.tgt}) {
        if (g.is_terminal(body.label(end))) owners[e.label].insert({i, end});
      }
    }
    auto nts = g.nonterminals(body);
    if (nts.size() != 1) continue;
    const auto& x = nts.front();
    check_tether(g, body, x, alphas, "production '" + p.name + "'", out);
    for (const auto& sigma : g.delta) {
      for (const auto& a : alphas) {
        for (auto d : {Direction::In, Direction::Out}) {
          bool passes = std::any_of(p.body.connections.begin(), p.body.connections.end(),
                                    [&](const ConnectionInstruction& c) {
                                      return c.neighbor == sigma && c.old_label == a && c.dir == d &&
                                             c.attach == x && alphas.count(c.new_label);
                                    });
          if (!passes) {
            out.push_back({4, "production '" + p.name + "' does not pass (" + sigma + ", " + a + ", " +
                                  std::string(to_string(d)) + ") through"});
          }
        }
      }
    }
  }
  for (const auto& [label, who] : owners) {
    if (who.size() > 1) {
      out.push_back({5, "label '" + label + "' touches " + std::to_string(who.size()) + " terminal vertices"});
    }
  }

  // Simulated sentential forms; stops at the first violating form.
  if (options.simulate_steps > 0 && report.holds(1)) {
    std::unordered_set<std::string> seen;
    std::deque<std::pair<SententialForm, int>> queue;
    queue.push_back({start_form(g), 0});
    bool failed = false;
    while (!queue.empty() && !failed) {
      auto [form, depth] = std::move(queue.front());
      queue.pop_front();
      const auto& graph = form.form.graph;
      auto nts = g.nonterminals(graph);
      if (nts.empty() || depth == options.simulate_steps) continue;
      if (depth > 0) {
        auto before = out.size();
        check_tether(g, graph, nts.front(), alphas, "form after " + std::to_string(depth) + " steps", out);
        if (out.size() != before) {
          failed = true;
          continue;
        }
      }
      for (std::size_t i = 0; i < g.productions.size(); ++i) {
        if (g.productions[i].lhs != graph.label(nts.front())) continue;
        auto next = derive_step(g, form, nts.front(), i);
        if (next.form.graph.vertex_count() > std::size_t(options.simulate_vertices)) continue;
        if (seen.insert(canonical_key(next.form.graph)).second) queue.push_back({std::move(next), depth + 1});
      }
    }
  }
  return report;
}

}  // namespace bangnce
