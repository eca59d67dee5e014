#include <algorithm>
#include <random>
#include <unordered_set>

#include "bangnce/ednce.hpp"
#include "bangnce/isomorphism.hpp"

namespace bangnce {

namespace {

std::size_t terminal_count(const Grammar& g, const LabeledGraph& h) {
  std::size_t n = 0;
  for (const auto& [_, l] : h.vertices()) n += g.is_terminal(l) ? 1 : 0;
  return n;
}

bool all_edges_final(const Grammar& g, const LabeledGraph& h) {
  return std::all_of(h.edges().begin(), h.edges().end(),
                     [&](const Edge& e) { return g.omega.count(e.label) != 0; });
}

}  // namespace

IsoClassSet enumerate_grammar_language(const Grammar& g, GrammarBudget budget,
                                       const GrammarEnumerationOptions& options) {
  if (budget.max_steps < 0 || budget.max_vertices < 0) throw Error("budget must be non-negative");
  const auto max_vertices = std::size_t(budget.max_vertices);
  std::mt19937_64 rng(options.exploration_seed);

  IsoClassSet result;
  std::unordered_set<std::string> seen;
  std::vector<SententialForm> frontier{start_form(g)};
  seen.insert(canonical_key(frontier.front().form.graph));

  for (int depth = 0; !frontier.empty(); ++depth) {
    std::vector<SententialForm> next;
    for (const auto& f : frontier) {
      const auto& h = f.form.graph;
      auto nts = g.nonterminals(h);
      if (options.assert_linear && nts.size() > 1) {
        throw GrammarError("sentential form with " + std::to_string(nts.size()) +
                           " nonterminals in a linear enumeration");
      }
      if (nts.empty()) {
        if (h.vertex_count() <= max_vertices && all_edges_final(g, h)) result.insert(h);
        continue;
      }
      if (depth == budget.max_steps) continue;
      std::vector<std::pair<VertexId, std::size_t>> moves;
      for (const auto& v : nts) {
        for (std::size_t p = 0; p < g.productions.size(); ++p) {
          if (g.productions[p].lhs == h.label(v)) moves.push_back({v, p});
        }
      }
      if (options.exploration_seed != 0) std::shuffle(moves.begin(), moves.end(), rng);
      for (const auto& [v, p] : moves) {
        auto succ = derive_step(g, f, v, p);
        if (terminal_count(g, succ.form.graph) > max_vertices) continue;
        if (seen.insert(canonical_key(succ.form.graph)).second) next.push_back(std::move(succ));
      }
    }
    if (options.exploration_seed != 0) std::shuffle(next.begin(), next.end(), rng);
    frontier = std::move(next);
  }
  return result;
}

}  // namespace bangnce
