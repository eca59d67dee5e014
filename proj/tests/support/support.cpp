#include "support.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace testsupport {

namespace {

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

LabeledGraph make_graph(std::string_view vertices, std::string_view edges) {
  LabeledGraph g;
  for (const auto& w : words(vertices)) {
    auto colon = w.find(':');
    g.add_vertex(w.substr(0, colon), w.substr(colon + 1));
  }
  for (const auto& w : words(edges)) {
    auto gt = w.find('>');
    std::string left = w.substr(0, gt);
    std::string label = "e";
    if (auto dash = left.find('-'); dash != std::string::npos) {
      label = left.substr(dash + 1);
      left = left.substr(0, dash);
    }
    g.add_edge(left, label, w.substr(gt + 1));
  }
  return g;
}

GraphWithEmbedding naive_substitute(const GraphWithEmbedding& host, const VertexId& v,
                                    const GraphWithEmbedding& body) {
  GraphWithEmbedding r;
  for (const auto& [x, l] : host.graph.vertices()) {
    if (x != v) r.graph.add_vertex(x, l);
  }
  for (const auto& [x, l] : body.graph.vertices()) r.graph.add_vertex(x, l);
  for (const auto& e : host.graph.edges()) {
    if (e.src != v && e.tgt != v) r.graph.add_edge(e);
  }
  for (const auto& e : body.graph.edges()) r.graph.add_edge(e);
  for (const auto& e : host.graph.edges()) {
    if (e.tgt != v) continue;
    for (const auto& c : body.connections) {
      if (c.dir == Direction::In && c.neighbor == host.graph.label(e.src) && c.old_label == e.label) {
        r.graph.add_edge(e.src, c.new_label, c.attach);
      }
    }
  }
  for (const auto& e : host.graph.edges()) {
    if (e.src != v) continue;
    for (const auto& c : body.connections) {
      if (c.dir == Direction::Out && c.neighbor == host.graph.label(e.tgt) && c.old_label == e.label) {
        r.graph.add_edge(c.attach, c.new_label, e.tgt);
      }
    }
  }
  for (const auto& c : host.connections) {
    if (c.attach != v) r.connections.insert(c);
  }
  for (const auto& c : host.connections) {
    if (c.attach != v) continue;
    for (const auto& d : body.connections) {
      if (c.neighbor == d.neighbor && c.dir == d.dir && c.new_label == d.old_label) {
        r.connections.insert({c.neighbor, c.old_label, d.new_label, d.attach, c.dir});
      }
    }
  }
  return r;
}

bool brute_isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  std::vector<VertexId> va, vb;
  for (const auto& [x, _] : a.vertices()) va.push_back(x);
  for (const auto& [x, _] : b.vertices()) vb.push_back(x);
  std::vector<std::size_t> perm(vb.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::map<VertexId, VertexId> f;
    bool ok = true;
    for (std::size_t i = 0; i < va.size() && ok; ++i) {
      f[va[i]] = vb[perm[i]];
      ok = a.label(va[i]) == b.label(vb[perm[i]]);
    }
    if (!ok) continue;
    ok = std::all_of(a.edges().begin(), a.edges().end(),
                     [&](const Edge& e) { return b.has_edge({f[e.src], e.label, f[e.tgt]}); });
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

int floyd_max_distance(const LabeledGraph& g, bool directed) {
  const int n = int(g.vertex_count());
  if (n < 2) return 0;
  const int inf = std::numeric_limits<int>::max() / 4;
  std::map<VertexId, int> idx;
  for (const auto& [x, _] : g.vertices()) idx.emplace(x, int(idx.size()));
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) {
    d[idx[e.src]][idx[e.tgt]] = 1;
    if (!directed) d[idx[e.tgt]][idx[e.src]] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  int best = -1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && d[i][j] < inf) best = std::max(best, d[i][j]);
  return best;
}

LabeledGraph complete_bipartite(int m, int n, bool encoded) {
  LabeledGraph g;
  for (int i = 0; i < m; ++i) g.add_vertex("u" + std::to_string(i), "N");
  for (int j = 0; j < n; ++j) g.add_vertex("v" + std::to_string(j), "N");
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto u = "u" + std::to_string(i), v = "v" + std::to_string(j);
      if (encoded) {
        g.add_edge(u, "beta1", v);
      } else {
        const auto w = "w" + std::to_string(i) + "_" + std::to_string(j);
        g.add_vertex(w, "W");
        g.add_edge(u, "e", w);
        g.add_edge(w, "e", v);
      }
    }
  }
  return g;
}

BangGraph boxed_fan() {
  BangGraph g(make_graph("n0:N n1:N w1:W", "n1>w1 w1>n0"));
  g.add_box("b", {"n1", "w1"});
  return g;
}

BangGraph doubly_nested() {
  BangGraph g(make_graph("i:W h:N o:W x:N w:W", "i>h h>o x>w w>h"));
  g.add_box("outer", {"i", "h", "o", "x", "w"});
  g.add_box("inner", {"x", "w"}, {"outer"});
  return g;
}

BangGraph k_mn_bang() {
  BangGraph g(make_graph("u:N w:W v:N", "u>w w>v"));
  g.add_box("b1", {"u", "w"});
  g.add_box("b2", {"v", "w"});
  return g;
}

BangGraph trivial_pair() {
  BangGraph g(make_graph("n1:N wa:W wb:W n2:N", "n1>wa wa>wb wb>n2"));
  g.add_box("b1", {"n1", "wa", "wb"});
  g.add_box("b2", {"n2", "wa", "wb"});
  return g;
}

BangGraph node_sharing_pair() {
  BangGraph g(make_graph("i3:W n3:N o3:W m4:N p4:W", "i3>n3 n3>o3 m4>p4"));
  g.add_box("b3", {"i3", "n3", "o3"});
  g.add_box("b4", {"i3", "n3", "o3", "m4", "p4"});
  return g;
}

BangGraph wire_only_pair() {
  BangGraph g(make_graph("n5:N w:W n6:N", "n5>w w>n6"));
  g.add_box("b5", {"n5", "w"});
  g.add_box("b6", {"w"});
  return g;
}

BangGraph mixed_overlaps() {
  LabeledGraph base;
  std::vector<BangGraph> parts{trivial_pair(), node_sharing_pair(), wire_only_pair()};
  for (const auto& p : parts) base.add_disjoint(p.base());
  BangGraph g(base);
  for (const auto& p : parts) {
    for (const auto& [id, bx] : p.boxes()) g.add_box(id, bx.contents);
  }
  return g;
}

namespace {

Production production(const std::string& name, const Label& lhs, LabeledGraph body,
                      std::set<ConnectionInstruction> cs = {}) {
  return {name, lhs, {std::move(body), std::move(cs)}};
}

}  // namespace

Grammar chain_grammar() {
  Grammar g;
  g.sigma = {"S", "X", "Y", "W", "N"};
  g.delta = {"W", "N"};
  g.gamma = g.omega = {"e"};
  g.initial = "S";
  g.productions = {
      production("start", "S", make_graph("w0:W n0:N x:X", "w0>n0 n0>x")),
      production("wire", "X", make_graph("w:W y:Y", "w>y"), {{"N", "e", "e", "w", Direction::In}}),
      production("node", "Y", make_graph("n:N x:X", "n>x"), {{"W", "e", "e", "n", Direction::In}}),
      production("end", "X", LabeledGraph{}),
  };
  return g;
}

Grammar confluence_counterexample() {
  Grammar g;
  g.sigma = {"S", "A", "B", "N"};
  g.delta = {"N"};
  g.gamma = {"a", "b", "c"};
  g.omega = {"c"};
  g.initial = "S";
  g.productions = {
      production("pair", "S", make_graph("p:A q:B", "p-a>q")),
      production("p1", "A", make_graph("x:N", ""), {{"B", "a", "b", "x", Direction::Out}}),
      production("p2", "B", make_graph("y:N", ""), {{"N", "b", "c", "y", Direction::In}}),
  };
  return g;
}

SubstitutionExample substitution_example() {
  SubstitutionExample ex;
  ex.host.graph = make_graph("a:N v:X b:W", "a>v v>b");
  ex.host.connections = {{"N", "e", "e", "v", Direction::In}, {"W", "f", "e", "v", Direction::Out}};
  ex.v = "v";
  ex.body.graph = make_graph("x:N y:W", "y>x");
  ex.body.connections = {{"N", "e", "e", "y", Direction::In}, {"W", "e", "e", "x", Direction::Out}};
  ex.result.graph = make_graph("a:N b:W x:N y:W", "a>y y>x x>b");
  ex.result.connections = {{"N", "e", "e", "y", Direction::In}, {"W", "f", "e", "x", Direction::Out}};
  return ex;
}

std::vector<CorpusItem> no_overlap_corpus() {
  std::vector<CorpusItem> out;
  out.push_back({"fan", boxed_fan()});
  out.push_back({"doubly-nested", doubly_nested()});
  {
    BangGraph g(make_graph("c1:W c2:W", "c1>c2 c2>c1"));
    g.add_box("b", {"c1", "c2"});
    out.push_back({"circle-box", g});
  }
  {
    BangGraph g(make_graph("i:W o:W", "i>o"));
    g.add_box("b", {"i", "o"});
    out.push_back({"bare-wire-box", g});
  }
  {
    BangGraph g(make_graph("a:W b:W n:N", "a>b b>n"));
    g.add_box("b", {"a", "b"});
    out.push_back({"input-star", g});
  }
  {
    BangGraph g(make_graph("n:N a:W b:W", "n>a a>b"));
    g.add_box("b", {"a", "b"});
    out.push_back({"output-star", g});
  }
  {
    BangGraph g(make_graph("x:N xw:W h:N yw:W y:N", "x>xw xw>h h>yw yw>y"));
    g.add_box("left", {"x", "xw"});
    g.add_box("right", {"yw", "y"});
    out.push_back({"siblings", g});
  }
  {
    BangGraph g(make_graph("n:N p:W p2:W q:N r:W", "n>p p>p2 q>r r>n"));
    g.add_box("outer", {"n", "p", "p2", "q", "r"});
    g.add_box("inner", {"q", "r"}, {"outer"});
    out.push_back({"nested-hub", g});
  }
  {
    BangGraph g(make_graph("i:W n:N w:W m:N", "i>n n>w w>m"));
    out.push_back({"concrete", g});
  }
  {
    BangGraph g(make_graph("a:N m:W b:N", "a>m m>b"));
    g.add_box("b", {"a", "m", "b"});
    out.push_back({"edge-box", g});
  }
  {
    BangGraph g(make_graph("s:N wi:W n:N wo:W t:N", "s>wi wi>n n>wo wo>t"));
    g.add_box("b", {"wi", "n", "wo"});
    out.push_back({"through-node", g});
  }
  {
    BangGraph g(make_graph("n:N c1:W c2:W", "c1>c2 c2>c1"));
    g.add_box("b", {"n", "c1", "c2"});
    out.push_back({"node-and-circle", g});
  }
  return out;
}

BangGraph nested_siblings() {
  BangGraph g(make_graph("h:N x:N xw:W yw:W y:N", "x>xw xw>h h>yw yw>y"));
  g.add_box("outer", {"h", "x", "xw", "yw", "y"});
  g.add_box("left", {"x", "xw"}, {"outer"});
  g.add_box("right", {"yw", "y"}, {"outer"});
  return g;
}

std::vector<CorpusItem> overlap_corpus() {
  std::vector<CorpusItem> out;
  out.push_back({"k-mn", k_mn_bang()});
  out.push_back({"long-shared-wire", trivial_pair()});
  {
    BangGraph g(make_graph("u:N w1:W v:N w2:W z:N", "u>w1 w1>v v>w2 w2>z"));
    g.add_box("b1", {"u", "w1"});
    g.add_box("b2", {"w1", "v", "w2"});
    g.add_box("b3", {"w2", "z"});
    out.push_back({"three-box-chain", g});
  }
  {
    BangGraph g(make_graph("u:N w:W v:N x:W t:N", "u>w w>v v>x x>t"));
    g.add_box("b1", {"u", "w"});
    g.add_box("b2", {"w", "v", "x"});
    out.push_back({"k-mn-with-tail", g});
  }
  return out;
}

LabeledGraph random_string_graph(std::mt19937_64& rng, int max_vertices, int edge_labels) {
  std::uniform_int_distribution<int> count(0, max_vertices);
  const int n = count(rng);
  LabeledGraph g;
  std::bernoulli_distribution wire(0.55);
  for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i), wire(rng) ? "W" : "N");
  if (n < 2) return g;
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> lab(0, edge_labels - 1);
  std::uniform_int_distribution<int> tries(0, 2 * n);
  for (int t = tries(rng); t > 0; --t) {
    auto a = "v" + std::to_string(pick(rng)), b = "v" + std::to_string(pick(rng));
    if (a == b) continue;
    const bool aw = is_wire_label(g.label(a)), bw = is_wire_label(g.label(b));
    if (!aw && !bw) continue;
    if (aw && g.out_degree(a) > 0) continue;
    if (bw && g.in_degree(b) > 0) continue;
    g.add_edge(a, lab(rng) == 0 ? "e" : "f" + std::to_string(lab(rng)), b);
  }
  return g;
}

LabeledGraph random_graph(std::mt19937_64& rng, int max_vertices, const std::vector<Label>& labels,
                          const std::vector<Label>& edge_labels, double density) {
  std::uniform_int_distribution<int> count(0, max_vertices);
  std::uniform_int_distribution<std::size_t> lab(0, labels.size() - 1);
  std::uniform_int_distribution<std::size_t> elab(0, edge_labels.size() - 1);
  std::bernoulli_distribution edge(density);
  const int n = count(rng);
  LabeledGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i), labels[lab(rng)]);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && edge(rng)) g.add_edge("v" + std::to_string(i), edge_labels[elab(rng)], "v" + std::to_string(j));
    }
  }
  return g;
}

LabeledGraph relabel(const LabeledGraph& g, std::mt19937_64& rng, const std::string& prefix) {
  std::vector<VertexId> ids;
  for (const auto& [x, _] : g.vertices()) ids.push_back(x);
  std::vector<std::size_t> perm(ids.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::map<VertexId, VertexId> f;
  for (std::size_t i = 0; i < ids.size(); ++i) f[ids[i]] = prefix + std::to_string(perm[i]);
  LabeledGraph out;
  for (const auto& [x, l] : g.vertices()) out.add_vertex(f[x], l);
  for (const auto& e : g.edges()) out.add_edge(f[e.src], e.label, f[e.tgt]);
  return out;
}

LabeledGraph random_homeo_move(const LabeledGraph& g, std::mt19937_64& rng, int& counter) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::vector<Edge> mergeable;
  for (const auto& e : edges) {
    if (!is_wire_label(g.label(e.src)) || !is_wire_label(g.label(e.tgt))) continue;
    // Absorb e.tgt into e.src unless that closes a one-vertex loop.
    const auto& outs = g.out_edges(e.tgt);
    if (!outs.empty() && outs.begin()->tgt == e.src) continue;
    mergeable.push_back(e);
  }
  std::vector<VertexId> boundary_wires;
  for (const auto& [x, l] : g.vertices()) {
    if (is_wire_label(l) && (g.in_degree(x) == 0 || g.out_degree(x) == 0)) boundary_wires.push_back(x);
  }
  std::uniform_int_distribution<int> kind(0, 2);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const int k = kind(rng);
    LabeledGraph out = g;
    const VertexId fresh = "m" + std::to_string(counter);
    if (k == 0 && !edges.empty()) {
      auto e = edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
      ++counter;
      out.remove_edge(e);
      out.add_vertex(fresh, "W");
      out.add_edge(e.src, e.label, fresh);
      out.add_edge(fresh, e.label, e.tgt);
      return out;
    }
    if (k == 1 && !mergeable.empty()) {
      auto e = mergeable[std::uniform_int_distribution<std::size_t>(0, mergeable.size() - 1)(rng)];
      std::optional<Edge> next;
      if (!g.out_edges(e.tgt).empty()) next = *g.out_edges(e.tgt).begin();
      out.remove_vertex(e.tgt);
      if (next) out.add_edge(e.src, next->label, next->tgt);
      return out;
    }
    if (k == 2 && !boundary_wires.empty()) {
      auto w = boundary_wires[std::uniform_int_distribution<std::size_t>(0, boundary_wires.size() - 1)(rng)];
      ++counter;
      out.add_vertex(fresh, "W");
      if (g.in_degree(w) == 0) {
        out.add_edge(fresh, "e", w);
      } else {
        out.add_edge(w, "e", fresh);
      }
      return out;
    }
  }
  return g;
}

namespace {

// (kind, length, source node, target node); kind 0 = wire, 1 = circle.
using Component = std::tuple<int, int, int, int>;

void component_multisets(const std::vector<Component>& types, std::size_t from, int remaining,
                         std::vector<Component>& current,
                         const std::function<void(const std::vector<Component>&)>& emit) {
  if (remaining == 0) {
    emit(current);
    return;
  }
  for (std::size_t i = from; i < types.size(); ++i) {
    const int len = std::get<1>(types[i]);
    if (len > remaining) continue;
    current.push_back(types[i]);
    component_multisets(types, i, remaining - len, current, emit);
    current.pop_back();
  }
}

}  // namespace

std::vector<LabeledGraph> string_graph_classes(int max_vertices) {
  std::vector<LabeledGraph> out;
  for (int nodes = 0; nodes <= max_vertices; ++nodes) {
    for (int wires = 0; nodes + wires <= max_vertices; ++wires) {
      std::vector<Component> types;
      for (int len = 1; len <= wires; ++len) {
        for (int s = -1; s < nodes; ++s)
          for (int t = -1; t < nodes; ++t) types.emplace_back(0, len, s, t);
        if (len >= 2) types.emplace_back(1, len, -1, -1);
      }
      std::set<std::vector<Component>> seen;
      std::vector<int> perm(nodes);
      std::vector<Component> current;
      component_multisets(types, 0, wires, current, [&](const std::vector<Component>& cs) {
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<Component> best;
        bool first = true;
        do {
          std::vector<Component> mapped;
          for (auto [k, len, s, t] : cs) mapped.emplace_back(k, len, s < 0 ? s : perm[s], t < 0 ? t : perm[t]);
          std::sort(mapped.begin(), mapped.end());
          if (first || mapped < best) best = mapped;
          first = false;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (!seen.insert(best).second) return;
        LabeledGraph g;
        for (int i = 0; i < nodes; ++i) g.add_vertex("n" + std::to_string(i), "N");
        int w = 0;
        for (auto [k, len, s, t] : best) {
          std::vector<VertexId> chain;
          for (int i = 0; i < len; ++i) {
            chain.push_back("w" + std::to_string(w++));
            g.add_vertex(chain.back(), "W");
          }
          for (int i = 0; i + 1 < len; ++i) g.add_edge(chain[i], "e", chain[i + 1]);
          if (k == 1) g.add_edge(chain.back(), "e", chain.front());
          if (s >= 0) g.add_edge("n" + std::to_string(s), "e", chain.front());
          if (t >= 0) g.add_edge(chain.back(), "e", "n" + std::to_string(t));
        }
        out.push_back(std::move(g));
      });
    }
  }
  return out;
}

GraphWithEmbedding random_embedding(std::mt19937_64& rng, const std::string& prefix, int max_vertices,
                                    const std::vector<Label>& labels, const std::vector<Label>& edge_labels,
                                    int instructions) {
  GraphWithEmbedding out;
  out.graph = random_graph(rng, max_vertices, labels, edge_labels, 0.35).with_prefix(prefix);
  std::vector<VertexId> ids;
  for (const auto& [x, _] : out.graph.vertices()) ids.push_back(x);
  if (ids.empty()) return out;
  for (int i = 0; i < instructions; ++i) {
    out.connections.insert({labels[rng() % labels.size()], edge_labels[rng() % edge_labels.size()],
                            edge_labels[rng() % edge_labels.size()], ids[rng() % ids.size()],
                            rng() % 2 ? Direction::In : Direction::Out});
  }
  return out;
}

std::vector<Grammar> builder_outputs() {
  auto h = make_graph("a:N w:W b:N", "a>w w>b");
  auto lab = AlphaLabeling::for_graph(h);
  auto fan = boxed_fan();
  auto sl = AlphaLabeling::for_graph(fan.base());
  auto arm = compile_concrete(make_graph("n1:N w1:W", "n1>w1"), sl, "1");
  auto hub = compile_concrete(make_graph("n0:N", ""), sl, "2");
  auto chained = chain_disjoint(wrap_in_box(arm), hub);
  auto k = k_mn_bang();
  auto kl = AlphaLabeling::for_graph(k.base());
  auto pair = chain_disjoint(wrap_in_box(compile_concrete(make_graph("u:N", ""), kl, "1")),
                             wrap_in_box(compile_concrete(make_graph("v:N", ""), kl, "2")));
  return {compile_concrete(h, lab),
          compile_concrete(LabeledGraph{}, lab),
          wrap_in_box(compile_concrete(h, lab)),
          wrap_in_box(wrap_in_box(compile_concrete(h, lab))),
          chained,
          connect_external(chained, "w1", "n0", Direction::In, sl),
          pair,
          connect_overlap(pair, "u", "v", 1, Direction::In, kl)};
}

}  // namespace testsupport
