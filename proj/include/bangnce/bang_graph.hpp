#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bangnce/graph.hpp"
#include "bangnce/iso_class_set.hpp"
#include "bangnce/string_graph.hpp"

namespace bangnce {

using BoxId = std::string;

class BoxError : public Error {
 public:
  using Error::Error;
};

/// A string graph with a poset of !-boxes, each mapped to a vertex set whose
/// full subgraph is open.
///
/// Nesting is declared structure: `add_box` takes the boxes the new box sits
/// in and closes the relation transitively. Boxes whose contents merely
/// happen to be comparable are not nested.
class BangGraph {
 public:
  struct Box {
    std::set<VertexId> contents;
    std::set<BoxId> ancestors;  // strict
    bool operator==(const Box&) const = default;
  };

  BangGraph() = default;
  explicit BangGraph(LabeledGraph base) : base_(std::move(base)) {}

  // Parents must already be declared, which keeps the order acyclic.
  void add_box(const BoxId& id, std::set<VertexId> contents,
               const std::set<BoxId>& parents = {});

  const LabeledGraph& base() const { return base_; }
  const std::map<BoxId, Box>& boxes() const { return boxes_; }
  bool has_box(const BoxId& b) const { return boxes_.count(b) != 0; }
  bool is_concrete() const { return boxes_.empty(); }

  const std::set<VertexId>& contents(const BoxId& b) const { return box(b).contents; }
  const std::set<BoxId>& ancestors(const BoxId& b) const { return box(b).ancestors; }
  std::set<BoxId> descendants(const BoxId& b) const;
  // inner <= outer in the reflexive nesting order.
  bool nested(const BoxId& inner, const BoxId& outer) const;
  std::vector<BoxId> top_level() const;
  std::set<BoxId> boxes_containing(const VertexId& v) const;
  std::set<VertexId> boxed_vertices() const;

  // Openness, monotonicity and string-graph validity; empty when valid.
  std::vector<std::string> violations() const;
  void validate() const;

  bool operator==(const BangGraph&) const = default;

 private:
  const Box& box(const BoxId& b) const;

  LabeledGraph base_;
  std::map<BoxId, Box> boxes_;

  friend BangGraph kill(const BangGraph&, const BoxId&);
  friend BangGraph expand(const BangGraph&, const BoxId&);
};

// In(h \ O) ⊆ In(h) and Out(h \ O) ⊆ Out(h).
bool is_open(const LabeledGraph& h, const std::set<VertexId>& subgraph);

enum class OverlapKind { Trivial, Nontrivial };

struct BoxPairOverlap {
  BoxId first;
  BoxId second;
  OverlapKind kind = OverlapKind::Trivial;
  std::vector<Wire> shared_wires;   // trivial pairs
  std::set<VertexId> offending;     // nontrivial pairs
  bool disjoint() const { return kind == OverlapKind::Trivial && shared_wires.empty(); }
};

struct OverlapReport {
  std::vector<BoxPairOverlap> pairs;  // every non-nested pair, first < second

  bool all_trivial() const;
  const BoxPairOverlap* find(const BoxId& a, const BoxId& b) const;
};

OverlapReport classify_overlap(const BangGraph& g);
bool is_bgto(const BangGraph& g);

/// Deletes B(b) and removes b together with every box nested in it.
BangGraph kill(const BangGraph& g, const BoxId& b);

/// Adds a fresh copy of B(b) outside b. Vertex v of the k-th expansion is
/// named "v!b!k", nested boxes d are copied to "d!b!k"; edges between B(b)
/// and the rest are duplicated onto the copy, and boxes not nested in b
/// receive copies of the vertices they share with B(b).
BangGraph expand(const BangGraph& g, const BoxId& b);

// Canonical key of the graph with box membership and nesting.
std::string bang_key(const BangGraph& g);

struct BangBudget {
  int max_ops = 8;
  int max_vertices = 10;
};

/// Concrete instances reachable in at most `max_ops` EXPAND/KILL steps with
/// at most `max_vertices` vertices, by breadth-first search over states
/// deduplicated with bang_key. States whose unboxed vertices already exceed
/// the vertex budget are dropped, since no operation removes them, and so
/// are states with more top-level boxes than operations left.
IsoClassSet enumerate_language(const BangGraph& g, BangBudget budget);

}  // namespace bangnce
