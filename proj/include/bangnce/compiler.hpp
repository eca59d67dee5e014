#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bangnce/bang_graph.hpp"
#include "bangnce/ednce.hpp"

namespace bangnce {

class CompileError : public Error {
 public:
  using Error::Error;
};

class OverlapError : public CompileError {
 public:
  OverlapError(std::string what, OverlapReport report)
      : CompileError(std::move(what)), report_(std::move(report)) {}
  const OverlapReport& report() const { return report_; }

 private:
  OverlapReport report_;
};

/// Edge-label conventions of compiled grammars.
///
/// Vertex v_i of the source !-graph owns the non-final label "alpha<i>"; an
/// edge with that label always touches v_i or one of its copies. Encoded
/// overlap wires get final labels "beta<k>", ordinary edges keep the plain
/// label "e". While a box is being iterated, the copies produced by finished
/// iterations sit under "alpha<i>@<tag>" so instructions of the running
/// iteration cannot see them.
struct AlphaLabeling {
  std::map<VertexId, int> index;

  // Numbers the vertices 1..n in id order.
  static AlphaLabeling for_vertices(const std::set<VertexId>& ids);
  static AlphaLabeling for_graph(const LabeledGraph& g) { return for_vertices(g.vertex_ids()); }

  Label alpha_of(const VertexId& v) const;

  static Label alpha(int i) { return "alpha" + std::to_string(i); }
  static Label beta(int k) { return "beta" + std::to_string(k); }
  static Label parked(const Label& alpha, const std::string& tag) { return alpha + "@" + tag; }
  static Label plain() { return Label(kPlainEdge); }
  static bool is_beta(std::string_view label);
};

struct LinearFormReport {
  struct Item {
    int condition;  // 1..5
    std::string detail;
  };
  std::vector<Item> violations;

  bool ok() const { return violations.empty(); }
  bool holds(int condition) const;
};

struct LinearFormOptions {
  // Derivation depth for the simulated check of condition 3; 0 checks the
  // production bodies only.
  int simulate_steps = 10;
  int simulate_vertices = 16;
};

/// The five !-linear form conditions. The α family is Γ − Ω.
///  1. linear;
///  2. exactly one production without a nonterminal, and its body is empty;
///  3. in every sentential form each terminal has α-edges to and from the
///     nonterminal, and the nonterminal has no other edges;
///  4. every non-final production passes each α label through to its
///     nonterminal for every terminal neighbour label and both directions;
///  5. each α label touches at most one terminal vertex across all bodies.
LinearFormReport check_bang_linear_form(const Grammar& g, const LinearFormOptions& options = {});

// Label of the unique empty-bodied production.
Label final_nonterminal(const Grammar& g);

/// Grammar generating exactly {h}: S → h plus nonterminal F tethered to each
/// v_i by α_i in both directions, and F → ∅. `stem` is appended to S and F.
Grammar compile_concrete(const LabeledGraph& h, const AlphaLabeling& labeling,
                         const std::string& stem = "");

/// Grammar for "the old language inside one fresh top-level box". The old
/// final production now emits S'; S' either restarts the old grammar or
/// stops via F' → ∅. Finishing an iteration parks the α labels of its
/// vertices under the S' tag and stopping restores them.
Grammar wrap_in_box(const Grammar& g, const std::string& stem = "'");

/// Disjoint union: the final production of g1 emits g2's start symbol.
/// Nonterminals of g2 are renamed apart from g1's when they clash.
Grammar chain_disjoint(const Grammar& g1, const Grammar& g2);

/// Every copy of wire-vertex `wire` gets a plain edge to (Direction::In:
/// wire → node) or from (Out: node → wire) the unboxed node-vertex `node`,
/// via one instruction on the production that creates `node`.
Grammar connect_external(const Grammar& g, const VertexId& wire, const VertexId& node,
                         Direction dir, const AlphaLabeling& labeling);

/// Every copy of node-vertex `from` gets a beta<k> edge to (In: from → to) or
/// from (Out: to → from) every copy of `to` created afterwards.
Grammar connect_overlap(const Grammar& g, const VertexId& from, const VertexId& to, int k,
                        Direction dir, const AlphaLabeling& labeling);

struct TraceStep {
  enum class Kind { Concrete, Wrap, Chain, ConnectExternal, ConnectOverlap };
  Kind kind = Kind::Concrete;
  std::vector<VertexId> vertices;  // Concrete
  BoxId box;                       // Wrap
  VertexId source;                 // Connect*: wire / instruction neighbour
  VertexId target;                 // Connect*: vertex receiving the instruction
  int beta = 0;                    // ConnectOverlap
  Direction dir = Direction::In;
  std::size_t productions = 0;  // grammar size after the step

  bool operator==(const TraceStep&) const = default;
};

std::string_view to_string(TraceStep::Kind k);

struct CompilationTrace {
  std::vector<TraceStep> steps;
  bool operator==(const CompilationTrace&) const = default;
};

struct Compilation {
  Grammar grammar;
  CompilationTrace trace;
  AlphaLabeling labeling;
  // Overlap wires replaced by beta<k> edges, indexed by k - 1.
  std::vector<Wire> encoded_wires;
};

/// Compiles a !-graph with trivial overlap into a LIN-edNCE grammar in
/// !-linear form. Boxes are taken top-level first in id order, each box's
/// grammar is chained before the rest of its scope, and overlap wires are
/// wire-encoded. Throws OverlapError on non-trivial overlap.
Compilation compile(const BangGraph& g);

/// Executes a trace against `g`; compile() is planning followed by replay.
Grammar replay(const BangGraph& g, const CompilationTrace& trace);

}  // namespace bangnce
