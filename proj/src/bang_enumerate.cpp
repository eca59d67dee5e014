#include <unordered_set>

#include "bangnce/bang_graph.hpp"

namespace bangnce {

namespace {

std::size_t unboxed_count(const BangGraph& g) {
  return g.base().vertex_count() - g.boxed_vertices().size();
}

// Each operation removes at most one top-level box, so finishing needs at
// least this many more steps.
std::size_t ops_to_finish(const BangGraph& g) { return g.top_level().size(); }

}  // namespace

IsoClassSet enumerate_language(const BangGraph& g, BangBudget budget) {
  if (budget.max_ops < 0 || budget.max_vertices < 0) throw Error("budget must be non-negative");
  const auto max_vertices = std::size_t(budget.max_vertices);
  IsoClassSet result;
  std::unordered_set<std::string> seen;
  std::vector<BangGraph> frontier;
  if (unboxed_count(g) <= max_vertices) {
    seen.insert(bang_key(g));
    frontier.push_back(g);
  }
  for (int depth = 0; !frontier.empty(); ++depth) {
    std::vector<BangGraph> next;
    for (const auto& state : frontier) {
      if (state.is_concrete()) {
        if (state.base().vertex_count() <= max_vertices) result.insert(state.base());
        continue;
      }
      if (depth == budget.max_ops) continue;
      for (const auto& [box, _] : state.boxes()) {
        for (int op = 0; op < 2; ++op) {
          BangGraph succ = op == 0 ? kill(state, box) : expand(state, box);
          if (unboxed_count(succ) > max_vertices) continue;
          if (std::size_t(depth + 1) + ops_to_finish(succ) > std::size_t(budget.max_ops)) continue;
          if (seen.insert(bang_key(succ)).second) next.push_back(std::move(succ));
        }
      }
    }
    frontier = std::move(next);
  }
  return result;
}

}  // namespace bangnce
