#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bangnce/graph.hpp"
#include "bangnce/iso_class_set.hpp"

namespace bangnce {

class GrammarError : public Error {
 public:
  using Error::Error;
};

enum class Direction { In, Out };

std::string_view to_string(Direction d);

/// (σ, β/γ, x, d): for every β-edge between a σ-labelled neighbour and the
/// replaced vertex (in direction d), add a γ-edge between that neighbour and
/// body vertex x.
struct ConnectionInstruction {
  Label neighbor;
  Label old_label;
  Label new_label;
  VertexId attach;
  Direction dir = Direction::In;

  auto operator<=>(const ConnectionInstruction&) const = default;
};

struct GraphWithEmbedding {
  LabeledGraph graph;
  std::set<ConnectionInstruction> connections;

  void validate() const;
  bool operator==(const GraphWithEmbedding&) const = default;
};

/// (H, C_H)[v/(D, C_D)]. The host and body must have disjoint vertex ids.
GraphWithEmbedding substitute(const GraphWithEmbedding& host, const VertexId& v,
                              const GraphWithEmbedding& body);

struct Production {
  std::string name;  // metadata only
  Label lhs;
  GraphWithEmbedding body;

  bool operator==(const Production&) const = default;
};

/// edNCE grammar (Σ, Δ, Γ, Ω, P, S). Several productions may share a left-hand
/// side.
struct Grammar {
  std::set<Label> sigma;
  std::set<Label> delta;
  std::set<Label> gamma;
  std::set<Label> omega;
  std::vector<Production> productions;
  Label initial;

  bool is_terminal(const Label& l) const { return delta.count(l) != 0; }
  std::vector<VertexId> nonterminals(const LabeledGraph& g) const;
  // Throws GrammarError when an alphabet or production is malformed.
  void validate() const;

  bool operator==(const Grammar&) const = default;
};

GraphWithEmbedding starting_graph(const Grammar& g, const VertexId& z = "z");

struct DerivationStep {
  VertexId vertex;
  std::size_t production;  // index into Grammar::productions
};

struct SententialForm {
  GraphWithEmbedding form;
  std::vector<DerivationStep> trace;
};

SententialForm start_form(const Grammar& g);

/// Replaces `v` by a fresh copy of the production body. Copies made at step k
/// carry ids "k.<body id>", which keeps every derivation creative and makes
/// replaying a trace reproduce the same graph.
SententialForm derive_step(const Grammar& g, const SententialForm& form, const VertexId& v,
                           std::size_t production);
SententialForm replay(const Grammar& g, const std::vector<DerivationStep>& trace);

struct GrammarBudget {
  int max_steps = 24;
  int max_vertices = 10;
};

struct GrammarEnumerationOptions {
  // Non-zero seeds shuffle the order in which nonterminals and productions
  // are tried; the resulting set must not depend on it.
  std::uint64_t exploration_seed = 0;
  // Fail when a sentential form has more than one nonterminal.
  bool assert_linear = false;
};

/// Terminal graphs (labels in Δ, edge labels in Ω) derivable in at most
/// `max_steps` steps with at most `max_vertices` vertices. Sentential forms
/// are deduplicated up to isomorphism; forms with more terminal vertices than
/// the budget are dropped since substitution never deletes terminals.
IsoClassSet enumerate_grammar_language(const Grammar& g, GrammarBudget budget,
                                       const GrammarEnumerationOptions& options = {});

bool is_linear(const Grammar& g);

/// Confluence via the pairwise check: two adjacent nonterminals labelled by
/// the left-hand sides of any two productions, joined by a single edge of any
/// label in either direction, must yield identical edges between the two
/// bodies in both substitution orders. Linear grammars return true without
/// running the check.
bool is_confluent(const Grammar& g);
// The pairwise check without the linear short-cut.
bool pairwise_confluent(const Grammar& g);

}  // namespace bangnce
