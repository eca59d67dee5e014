#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bangnce/bang_graph.hpp"
#include "bangnce/compiler.hpp"
#include "bangnce/ednce.hpp"

namespace testsupport {

using namespace bangnce;

// "u:N w:W v:N" and "u>w w-a>v" (edges default to the plain label).
LabeledGraph make_graph(std::string_view vertices, std::string_view edges);

// Independent oracles.
GraphWithEmbedding naive_substitute(const GraphWithEmbedding& host, const VertexId& v,
                                    const GraphWithEmbedding& body);
bool brute_isomorphic(const LabeledGraph& a, const LabeledGraph& b);
int floyd_max_distance(const LabeledGraph& g, bool directed = false);

// K_{m,n}: u_i -> w_ij -> v_j, or direct beta1 edges when `encoded`.
LabeledGraph complete_bipartite(int m, int n, bool encoded = false);

// Named fixtures.
BangGraph boxed_fan();  // fan of boxed node+wire into a fixed node
BangGraph doubly_nested();
BangGraph k_mn_bang();          // two boxes sharing the interior of one wire
BangGraph trivial_pair();       // boxes b1, b2
BangGraph node_sharing_pair();  // boxes b3, b4
BangGraph wire_only_pair();     // boxes b5, b6
BangGraph mixed_overlaps();     // all six boxes in one graph
BangGraph nested_siblings();    // two boxes nested in a third
Grammar chain_grammar();
Grammar confluence_counterexample();
// Host, body and expected result of the worked substitution example.
struct SubstitutionExample {
  GraphWithEmbedding host;
  VertexId v;
  GraphWithEmbedding body;
  GraphWithEmbedding result;
};
SubstitutionExample substitution_example();

struct CorpusItem {
  std::string name;
  BangGraph graph;
};
// Nested boxes, no overlap.
std::vector<CorpusItem> no_overlap_corpus();
// Trivial overlap.
std::vector<CorpusItem> overlap_corpus();

// Random generators.
LabeledGraph random_string_graph(std::mt19937_64& rng, int max_vertices, int edge_labels = 1);
LabeledGraph random_graph(std::mt19937_64& rng, int max_vertices, const std::vector<Label>& labels,
                          const std::vector<Label>& edge_labels, double density);
// Same graph with fresh ids in shuffled order.
LabeledGraph relabel(const LabeledGraph& g, std::mt19937_64& rng, const std::string& prefix = "r");
// Inserts or removes one wire-vertex without changing the homeomorphism class.
LabeledGraph random_homeo_move(const LabeledGraph& g, std::mt19937_64& rng, int& counter);

// Random host or body with ids prefixed by `prefix`.
GraphWithEmbedding random_embedding(std::mt19937_64& rng, const std::string& prefix, int max_vertices,
                                    const std::vector<Label>& labels, const std::vector<Label>& edge_labels,
                                    int instructions);

// Outputs of each grammar builder on small inputs: concrete, wrapped,
// chained, externally and overlap connected.
std::vector<Grammar> builder_outputs();

/// One representative per isomorphism class of string graphs with at most
/// `max_vertices` vertices over {N, W} and one edge label. Classes are found
/// from the wire structure alone: circles by length, and wires by length and
/// endpoint nodes, minimised over node permutations.
std::vector<LabeledGraph> string_graph_classes(int max_vertices);

}  // namespace testsupport
