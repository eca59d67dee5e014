#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bangnce/isomorphism.hpp"
#include "bangnce/json_io.hpp"
#include "bangnce/lang_equiv.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

std::size_t node_count(const LabeledGraph& g) {
  std::size_t n = 0;
  for (const auto& [_, l] : g.vertices()) n += is_node_label(l);
  return n;
}

// Keys of `small` missing from `big`.
std::vector<LabeledGraph> missing(const IsoClassSet& small, const IsoClassSet& big) {
  std::vector<LabeledGraph> out;
  for (const auto& [k, g] : small) {
    if (!big.contains_key(k)) out.push_back(g);
  }
  return out;
}

LabeledGraph copies(const LabeledGraph& h, int k) {
  LabeledGraph out;
  for (int i = 0; i < k; ++i) out.add_disjoint(h.with_prefix(std::to_string(i) + "."));
  return out;
}

LabeledGraph fan(int arms) {
  LabeledGraph f = make_graph("c:N", "");
  for (int i = 0; i < arms; ++i) {
    auto n = "n" + std::to_string(i), w = "w" + std::to_string(i);
    f.add_vertex(n, "N");
    f.add_vertex(w, "W");
    f.add_edge(n, "e", w);
    f.add_edge(w, "e", "c");
  }
  return f;
}

}  // namespace

TEST_CASE("alpha labelling") {
  auto lab = AlphaLabeling::for_vertices({"b", "a", "c"});
  CHECK(lab.alpha_of("a") == "alpha1");
  CHECK(lab.alpha_of("c") == "alpha3");
  CHECK_THROWS_AS(lab.alpha_of("d"), CompileError);
  CHECK(AlphaLabeling::is_beta("beta12"));
  CHECK_FALSE(AlphaLabeling::is_beta("beta"));
  CHECK_FALSE(AlphaLabeling::is_beta("alpha1"));
  CHECK(AlphaLabeling::parked("alpha2", "S'") == "alpha2@S'");
}

TEST_CASE("concrete grammar generates exactly its graph") {
  auto h = make_graph("a:N w:W b:N", "a>w w>b");
  auto g = compile_concrete(h, AlphaLabeling::for_graph(h));
  CHECK(check_bang_linear_form(g).ok());
  CHECK(final_nonterminal(g) == "F");
  auto lang = enumerate_grammar_language(g, {10, 10});
  REQUIRE(lang.size() == 1);
  CHECK(lang.contains(h));
  CHECK(enumerate_grammar_language(g, {10, 2}).empty());
}

TEST_CASE("wrapping iterates the language") {
  auto h = make_graph("n:N w:W", "n>w");
  auto g = wrap_in_box(compile_concrete(h, AlphaLabeling::for_graph(h)));
  CHECK(check_bang_linear_form(g).ok());
  CHECK(g.initial == "S'");
  CHECK(final_nonterminal(g) == "F'");
  IsoClassSet expected;
  for (int k = 0; k <= 3; ++k) expected.insert(copies(h, k));
  CHECK(enumerate_grammar_language(g, {24, 6}) == expected);

  // Wrapping twice gives fresh names and the same language.
  auto twice = wrap_in_box(g);
  CHECK(twice.initial == "S''");
  CHECK(enumerate_grammar_language(twice, {30, 6}) == expected);
}

TEST_CASE("chaining takes disjoint unions") {
  auto h = make_graph("a:N w:W b:N c:N", "a>w w>b");
  auto lab = AlphaLabeling::for_graph(h);
  auto g = chain_disjoint(compile_concrete(make_graph("a:N w:W b:N", "a>w w>b"), lab),
                          compile_concrete(make_graph("c:N", ""), lab));
  CHECK(check_bang_linear_form(g).ok());
  auto lang = enumerate_grammar_language(g, {10, 10});
  REQUIRE(lang.size() == 1);
  CHECK(lang.contains(h));

  // Both halves own alpha1.
  auto single = make_graph("a:N", "");
  auto one = compile_concrete(single, AlphaLabeling::for_graph(single));
  CHECK_THROWS_AS(chain_disjoint(one, one), GrammarError);
}

TEST_CASE("external connections reproduce the fan") {
  auto g = builder_outputs()[5];
  CHECK(check_bang_linear_form(g).ok());
  IsoClassSet fans;
  for (int k = 0; k <= 3; ++k) fans.insert(fan(k));
  CHECK(enumerate_grammar_language(g, {30, 7}) == fans);
  CHECK(enumerate_grammar_language(compile(boxed_fan()).grammar, {30, 7}) == fans);
}

TEST_CASE("overlap connections reproduce complete bipartite graphs") {
  auto g = builder_outputs()[7];
  CHECK(check_bang_linear_form(g).ok());
  IsoClassSet expected;
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; m + n <= 3; ++n) expected.insert(complete_bipartite(m, n, true));
  CHECK(enumerate_grammar_language(g, {40, 3}) == expected);
}

TEST_CASE("every builder output is in linear form") {
  for (const auto& g : builder_outputs()) {
    CHECK(is_linear(g));
    auto r = check_bang_linear_form(g);
    for (const auto& v : r.violations) CAPTURE(v.detail);
    CHECK(r.ok());
  }
}

TEST_CASE("linear form violations are reported by condition") {
  auto h = make_graph("a:N w:W", "a>w");
  const auto base = compile_concrete(h, AlphaLabeling::for_graph(h));

  CHECK_FALSE(check_bang_linear_form(confluence_counterexample()).holds(1));

  auto two_final = base;
  two_final.productions.push_back({"extra", "S", {make_graph("q:N", ""), {}}});
  CHECK_FALSE(check_bang_linear_form(two_final).holds(2));
  CHECK_THROWS_AS(final_nonterminal(two_final), GrammarError);

  auto untethered = base;
  untethered.productions[0].body.graph = untethered.productions[0].body.graph.without({});
  {
    auto& body = untethered.productions[0].body.graph;
    LabeledGraph copy;
    for (const auto& [v, l] : body.vertices()) copy.add_vertex(v, l);
    for (const auto& e : body.edges()) {
      if (!(e.src == "a" && e.label == "alpha1")) copy.add_edge(e.src, e.label, e.tgt);
    }
    body = copy;
  }
  CHECK_FALSE(check_bang_linear_form(untethered).holds(3));

  auto no_pass = base;
  auto& cs = no_pass.productions[0].body.connections;
  REQUIRE_FALSE(cs.empty());
  cs.erase(cs.begin());
  auto r4 = check_bang_linear_form(no_pass);
  CHECK_FALSE(r4.holds(4));
  CHECK(r4.holds(1));
  CHECK(r4.holds(2));
  CHECK(r4.holds(5));
  CHECK_THROWS_AS(wrap_in_box(no_pass), GrammarError);

  auto shared = base;
  {
    auto& body = shared.productions[0].body.graph;
    body.add_vertex("extra", "N");
    body.add_edge("extra", "alpha1", "@F");
    body.add_edge("@F", "alpha1", "extra");
  }
  CHECK_FALSE(check_bang_linear_form(shared).holds(5));

  CHECK(check_bang_linear_form(chain_grammar()).holds(1));
  CHECK_FALSE(check_bang_linear_form(chain_grammar()).ok());
  CHECK_THROWS_AS(wrap_in_box(chain_grammar()), GrammarError);
}

TEST_CASE("compile rejects non-trivial overlap with the report") {
  try {
    compile(mixed_overlaps());
    FAIL("expected OverlapError");
  } catch (const OverlapError& e) {
    CHECK_FALSE(e.report().all_trivial());
    CHECK(e.report().find("b3", "b4")->kind == OverlapKind::Nontrivial);
  }
  CHECK_THROWS_AS(compile(node_sharing_pair()), OverlapError);
  CHECK_THROWS_AS(compile(wire_only_pair()), OverlapError);
}

TEST_CASE("compile rejects boxes holding an overlap wire without its endpoints") {
  auto g = k_mn_bang();
  g.add_box("mid", {"w"}, {"b1", "b2"});
  REQUIRE(g.violations().empty());
  CHECK(is_bgto(g));
  CHECK_THROWS_AS(compile(g), CompileError);
}

TEST_CASE("compiled grammars") {
  auto c = compile(k_mn_bang());
  REQUIRE(c.encoded_wires.size() == 1);
  CHECK(c.encoded_wires[0].interior() == std::vector<VertexId>{"w"});
  CHECK(c.trace.steps.back().kind == TraceStep::Kind::ConnectOverlap);
  CHECK(c.trace.steps.back().beta == 1);
  CHECK(check_bang_linear_form(c.grammar).ok());

  std::vector<BangGraph> inputs;
  for (const auto& item : no_overlap_corpus()) inputs.push_back(item.graph);
  for (const auto& item : overlap_corpus()) inputs.push_back(item.graph);
  inputs.push_back(nested_siblings());
  for (const auto& g : inputs) {
    auto out = compile(g);
    CHECK(is_linear(out.grammar));
    CHECK(check_bang_linear_form(out.grammar).ok());
    CHECK(is_confluent(out.grammar));
    CHECK(pairwise_confluent(out.grammar));
    CHECK(replay(g, out.trace) == out.grammar);
    CHECK(compile(g).grammar == out.grammar);
    CHECK(trace_from_json(to_json(out.trace)) == out.trace);
    CHECK(grammar_from_json(to_json(out.grammar)) == out.grammar);
  }
}

TEST_CASE("replay rejects malformed traces") {
  auto g = boxed_fan();
  CompilationTrace empty;
  CHECK_THROWS_AS(replay(g, empty), CompileError);
  CompilationTrace chain_only{{TraceStep{TraceStep::Kind::Chain}}};
  CHECK_THROWS_AS(replay(g, chain_only), CompileError);
  TraceStep unknown;
  unknown.vertices = {"nope"};
  CHECK_THROWS_AS(replay(g, CompilationTrace{{unknown}}), CompileError);
}

TEST_CASE("complete bipartite language in wire mode") {
  auto grammar = compile(k_mn_bang()).grammar;
  auto decoded = enumerate_grammar_language(grammar, {24, 6})
                     .filter([](const LabeledGraph& h) { return wire_decode(h).vertex_count() <= 10; });
  auto bang = enumerate_language(k_mn_bang(), {8, 10});
  CHECK(equal_up_to(bang, decoded, EquivalenceMode::Wire).equal);
}

TEST_CASE("overlap corpus agrees on slices bounded by node count") {
  for (const auto& item : overlap_corpus()) {
    CAPTURE(item.name);
    auto keep = [](const LabeledGraph& h) { return node_count(h) <= 3; };
    auto bang = normalize(enumerate_language(item.graph, {8, 10}), EquivalenceMode::Homeo, false)
                    .filter(keep);
    auto grammar = normalize(enumerate_grammar_language(compile(item.graph).grammar, {30, 10}),
                             EquivalenceMode::Wire, true)
                       .filter(keep);
    CHECK(bang.size() > 3);
    CHECK(missing(bang, grammar).empty());
    CHECK(missing(grammar, bang).empty());
  }
}

TEST_CASE("nested siblings are sandwiched between budgets") {
  auto g = nested_siblings();
  auto grammar = compile(g).grammar;
  const int v = 8;
  auto norm = [](const IsoClassSet& s) { return normalize(s, EquivalenceMode::Homeo, false); };
  auto bang_small = norm(enumerate_language(g, {6, v}));
  auto bang_big = norm(enumerate_language(g, {10, v}));
  auto grammar_small = norm(enumerate_grammar_language(grammar, {16, v}));
  auto grammar_big = norm(enumerate_grammar_language(grammar, {40, v}));
  CHECK(bang_small.size() > 5);
  CHECK(grammar_small.size() > 5);
  CHECK(missing(bang_small, grammar_big).empty());
  CHECK(missing(grammar_small, bang_big).empty());
}
