#include "bangnce/compiler.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace bangnce {

namespace {

std::set<Label> alpha_family(const Grammar& g) {
  std::set<Label> out;
  std::set_difference(g.gamma.begin(), g.gamma.end(), g.omega.begin(), g.omega.end(),
                      std::inserter(out, out.end()));
  return out;
}

std::set<Label> nonterminal_labels(const Grammar& g) {
  std::set<Label> out;
  std::set_difference(g.sigma.begin(), g.sigma.end(), g.delta.begin(), g.delta.end(),
                      std::inserter(out, out.end()));
  return out;
}

Label fresh_label(const std::set<Label>& used, Label stem) {
  while (used.count(stem)) stem += "'";
  return stem;
}

VertexId nonterminal_id(const Label& nt) { return "@" + nt; }

std::optional<VertexId> body_nonterminal(const Grammar& g, const Production& p) {
  auto nts = g.nonterminals(p.body.graph);
  if (nts.empty()) return std::nullopt;
  return nts.front();
}

// Adds (σ, ℓ/ℓ, X, d) wherever a non-final production does not yet move α
// label ℓ onto its nonterminal X.
void add_pass_through(Grammar& g) {
  const auto alphas = alpha_family(g);
  for (auto& p : g.productions) {
    auto x = body_nonterminal(g, p);
    if (!x) continue;
    for (const auto& sigma : g.delta) {
      for (const auto& a : alphas) {
        for (auto d : {Direction::In, Direction::Out}) {
          bool covered = std::any_of(p.body.connections.begin(), p.body.connections.end(),
                                     [&](const ConnectionInstruction& c) {
                                       return c.neighbor == sigma && c.old_label == a && c.dir == d &&
                                              c.attach == *x && alphas.count(c.new_label);
                                     });
          if (!covered) p.body.connections.insert({sigma, a, a, *x, d});
        }
      }
    }
  }
}

std::size_t final_index(const Grammar& g) {
  const Label f = final_nonterminal(g);
  for (std::size_t i = 0; i < g.productions.size(); ++i) {
    if (g.productions[i].lhs == f && g.productions[i].body.graph.empty()) return i;
  }
  throw GrammarError("final production not found");
}

// Alpha labels that touch a terminal vertex somewhere in the bodies.
std::set<Label> owned_alphas(const Grammar& g) {
  const auto alphas = alpha_family(g);
  std::set<Label> out;
  for (const auto& p : g.productions) {
    for (const auto& e : p.body.graph.edges()) {
      if (!alphas.count(e.label)) continue;
      if (g.is_terminal(p.body.graph.label(e.src)) || g.is_terminal(p.body.graph.label(e.tgt))) {
        out.insert(e.label);
      }
    }
  }
  return out;
}

// The production and body vertex that own α label `a`.
std::pair<std::size_t, VertexId> owner_of(const Grammar& g, const Label& a) {
  std::set<std::pair<std::size_t, VertexId>> found;
  for (std::size_t i = 0; i < g.productions.size(); ++i) {
    const auto& body = g.productions[i].body.graph;
    for (const auto& e : body.edges()) {
      if (e.label != a) continue;
      for (const auto& end : {e.src, e.tgt}) {
        if (g.is_terminal(body.label(end))) found.insert({i, end});
      }
    }
  }
  if (found.empty()) throw GrammarError("no production creates the vertex owning '" + a + "'");
  if (found.size() > 1) throw GrammarError("label '" + a + "' is owned by more than one terminal vertex");
  return *found.begin();
}

void require_linear_form(const Grammar& g, const char* who) {
  LinearFormOptions static_only;
  static_only.simulate_steps = 0;
  auto report = check_bang_linear_form(g, static_only);
  if (!report.ok()) {
    throw GrammarError(std::string(who) + ": input not in !-linear form (condition " +
                       std::to_string(report.violations.front().condition) + ": " +
                       report.violations.front().detail + ")");
  }
}

void assert_unique_owners(const Grammar& g) {
  LinearFormOptions static_only;
  static_only.simulate_steps = 0;
  if (!check_bang_linear_form(g, static_only).holds(5)) {
    throw std::logic_error("compiler produced a grammar violating alpha ownership");
  }
}

}  // namespace

AlphaLabeling AlphaLabeling::for_vertices(const std::set<VertexId>& ids) {
  AlphaLabeling out;
  int i = 0;
  for (const auto& v : ids) out.index.emplace(v, ++i);
  return out;
}

Label AlphaLabeling::alpha_of(const VertexId& v) const {
  auto it = index.find(v);
  if (it == index.end()) throw CompileError("vertex '" + v + "' has no alpha label");
  return alpha(it->second);
}

bool AlphaLabeling::is_beta(std::string_view label) {
  if (label.size() <= 4 || label.substr(0, 4) != "beta") return false;
  return std::all_of(label.begin() + 4, label.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Grammar compile_concrete(const LabeledGraph& h, const AlphaLabeling& labeling, const std::string& stem) {
  require_string_graph(h);
  Grammar g;
  const Label start = "S" + stem;
  const Label fin = "F" + stem;
  g.delta = {Label(kWireLabel), Label(kNodeLabel)};
  for (const auto& [_, l] : h.vertices()) g.delta.insert(l);
  g.sigma = g.delta;
  g.sigma.insert(start);
  g.sigma.insert(fin);
  g.omega.insert(AlphaLabeling::plain());
  for (const auto& e : h.edges()) g.omega.insert(e.label);
  g.gamma = g.omega;

  Production body{start + ":body", start, {}};
  body.body.graph = h;
  VertexId x = nonterminal_id(fin);
  while (h.has_vertex(x)) x = "@" + x;
  body.body.graph.add_vertex(x, fin);
  for (const auto& [v, _] : h.vertices()) {
    const Label a = labeling.alpha_of(v);
    if (g.omega.count(a)) throw CompileError("alpha label '" + a + "' clashes with an edge label");
    g.gamma.insert(a);
    body.body.graph.add_edge(v, a, x);
    body.body.graph.add_edge(x, a, v);
  }
  g.productions.push_back(std::move(body));
  g.productions.push_back({fin + ":end", fin, {}});
  g.initial = start;
  add_pass_through(g);
  return g;
}

Grammar wrap_in_box(const Grammar& g, const std::string& stem) {
  require_linear_form(g, "wrap_in_box");
  Grammar out = g;
  const auto used = nonterminal_labels(g);
  const Label iter = fresh_label(used, "S" + stem);
  auto used2 = used;
  used2.insert(iter);
  const Label stop = fresh_label(used2, "F" + stem);
  const auto parked = owned_alphas(g);

  out.sigma.insert(iter);
  out.sigma.insert(stop);
  for (const auto& a : parked) out.gamma.insert(AlphaLabeling::parked(a, iter));

  auto& fin = out.productions[final_index(g)];
  fin.name = fin.lhs + ":next";
  const VertexId xi = nonterminal_id(iter);
  fin.body.graph.add_vertex(xi, iter);
  Production iterate{iter + ":iterate", iter, {}};
  iterate.body.graph.add_vertex(nonterminal_id(g.initial), g.initial);
  Production halt{iter + ":stop", iter, {}};
  const VertexId xs = nonterminal_id(stop);
  halt.body.graph.add_vertex(xs, stop);
  for (const auto& sigma : out.delta) {
    for (const auto& a : parked) {
      for (auto d : {Direction::In, Direction::Out}) {
        fin.body.connections.insert({sigma, a, AlphaLabeling::parked(a, iter), xi, d});
        halt.body.connections.insert({sigma, AlphaLabeling::parked(a, iter), a, xs, d});
      }
    }
  }
  out.productions.push_back(std::move(iterate));
  out.productions.push_back(std::move(halt));
  out.productions.push_back({stop + ":end", stop, {}});
  out.initial = iter;
  add_pass_through(out);
  return out;
}

Grammar chain_disjoint(const Grammar& g1, const Grammar& g2) {
  require_linear_form(g1, "chain_disjoint");
  require_linear_form(g2, "chain_disjoint");
  const auto a1 = owned_alphas(g1);
  for (const auto& a : owned_alphas(g2)) {
    if (a1.count(a)) throw GrammarError("chain_disjoint: both grammars own alpha label '" + a + "'");
  }

  auto used = nonterminal_labels(g1);
  const auto theirs = nonterminal_labels(g2);
  used.insert(theirs.begin(), theirs.end());
  std::map<Label, Label> rename;
  for (const auto& nt : theirs) {
    if (!g1.sigma.count(nt)) continue;
    Label fresh = fresh_label(used, nt);
    used.insert(fresh);
    rename[nt] = fresh;
  }
  auto r = [&](const Label& l) {
    auto it = rename.find(l);
    return it == rename.end() ? l : it->second;
  };

  Grammar out = g1;
  for (const auto& l : g2.sigma) out.sigma.insert(r(l));
  out.delta.insert(g2.delta.begin(), g2.delta.end());
  out.gamma.insert(g2.gamma.begin(), g2.gamma.end());
  out.omega.insert(g2.omega.begin(), g2.omega.end());
  const auto f1 = alpha_family(g1);
  const auto f2 = alpha_family(g2);
  for (const auto& l : out.omega) {
    if (f1.count(l) || f2.count(l)) {
      throw GrammarError("chain_disjoint: label '" + l + "' is final in one grammar only");
    }
  }

  auto& fin = out.productions[final_index(g1)];
  fin.name = fin.lhs + ":next";
  fin.body.graph.add_vertex(nonterminal_id(r(g2.initial)), r(g2.initial));
  for (const auto& p : g2.productions) {
    Production q{p.name, r(p.lhs), {}};
    std::map<VertexId, VertexId> ids;
    for (const auto& [id, l] : p.body.graph.vertices()) {
      VertexId nid = g2.is_terminal(l) ? id : nonterminal_id(r(l));
      ids[id] = nid;
      q.body.graph.add_vertex(nid, r(l));
    }
    for (const auto& e : p.body.graph.edges()) q.body.graph.add_edge(ids.at(e.src), e.label, ids.at(e.tgt));
    for (auto c : p.body.connections) {
      c.neighbor = r(c.neighbor);
      c.attach = ids.at(c.attach);
      q.body.connections.insert(std::move(c));
    }
    if (!rename.empty() || q.name.empty()) {
      auto colon = q.name.find(':');
      q.name = q.lhs + (colon == std::string::npos ? "" : q.name.substr(colon));
    }
    out.productions.push_back(std::move(q));
  }
  add_pass_through(out);
  return out;
}

Grammar connect_external(const Grammar& g, const VertexId& wire, const VertexId& node, Direction dir,
                         const AlphaLabeling& labeling) {
  require_linear_form(g, "connect_external");
  const Label ai = labeling.alpha_of(wire);
  auto [pi, x] = owner_of(g, labeling.alpha_of(node));
  Grammar out = g;
  auto& p = out.productions[pi];
  if (!is_node_label(p.body.graph.label(x))) {
    throw GrammarError("connect_external: '" + node + "' is not a node-vertex");
  }
  owner_of(g, ai);  // the wire must be generated somewhere
  out.omega.insert(AlphaLabeling::plain());
  out.gamma.insert(AlphaLabeling::plain());
  p.body.connections.insert({Label(kWireLabel), ai, AlphaLabeling::plain(), x, dir});
  return out;
}

Grammar connect_overlap(const Grammar& g, const VertexId& from, const VertexId& to, int k, Direction dir,
                        const AlphaLabeling& labeling) {
  require_linear_form(g, "connect_overlap");
  const Label ai = labeling.alpha_of(from);
  auto [fi, fx] = owner_of(g, ai);
  auto [ti, tx] = owner_of(g, labeling.alpha_of(to));
  const Label sigma = g.productions[fi].body.graph.label(fx);
  Grammar out = g;
  auto& p = out.productions[ti];
  if (!is_node_label(sigma) || !is_node_label(p.body.graph.label(tx))) {
    throw GrammarError("connect_overlap: both endpoints must be node-vertices");
  }
  const Label beta = AlphaLabeling::beta(k);
  out.omega.insert(beta);
  out.gamma.insert(beta);
  p.body.connections.insert({sigma, ai, beta, tx, dir});
  return out;
}

std::string_view to_string(TraceStep::Kind k) {
  switch (k) {
    case TraceStep::Kind::Concrete: return "concrete";
    case TraceStep::Kind::Wrap: return "wrap";
    case TraceStep::Kind::Chain: return "chain";
    case TraceStep::Kind::ConnectExternal: return "connect_external";
    case TraceStep::Kind::ConnectOverlap: return "connect_overlap";
  }
  return "?";
}

namespace {

struct Planner {
  const BangGraph& bang;
  CompilationTrace trace;
  std::map<VertexId, std::size_t> generated_at;  // vertex -> concrete step index

  void concrete(const std::set<VertexId>& vs) {
    TraceStep s;
    s.kind = TraceStep::Kind::Concrete;
    s.vertices.assign(vs.begin(), vs.end());
    for (const auto& v : vs) generated_at[v] = trace.steps.size();
    trace.steps.push_back(std::move(s));
  }

  // Pushes one grammar generating scope `vs` with active boxes `boxes`.
  void build(const std::set<VertexId>& vs, const std::set<BoxId>& boxes) {
    std::vector<BoxId> tops;
    for (const auto& b : boxes) {
      const auto& anc = bang.ancestors(b);
      if (std::none_of(anc.begin(), anc.end(), [&](const BoxId& a) { return boxes.count(a); })) {
        tops.push_back(b);
      }
    }
    if (tops.empty()) {
      concrete(vs);
      return;
    }
    const BoxId& b = tops.front();
    std::set<VertexId> inside, rest;
    for (const auto& v : vs) (bang.contents(b).count(v) ? inside : rest).insert(v);
    std::set<BoxId> inner, others;
    for (const auto& d : boxes) {
      if (d == b) continue;
      (bang.nested(d, b) ? inner : others).insert(d);
    }

    build(inside, inner);
    TraceStep w;
    w.kind = TraceStep::Kind::Wrap;
    w.box = b;
    trace.steps.push_back(std::move(w));
    if (rest.empty() && others.empty()) return;

    build(rest, others);
    trace.steps.push_back({TraceStep::Kind::Chain});
    for (const auto& v : inside) {
      auto link = [&](const VertexId& other, Direction d) {
        if (!rest.count(other)) return;
        const auto& base = bang.base();
        if (!is_wire_label(base.label(v)) || !is_node_label(base.label(other))) {
          throw CompileError("edge between '" + v + "' and '" + other + "' leaves box '" + b +
                             "' without a wire inside and a node outside");
        }
        TraceStep s;
        s.kind = TraceStep::Kind::ConnectExternal;
        s.source = v;
        s.target = other;
        s.dir = d;
        trace.steps.push_back(std::move(s));
      };
      for (const auto& e : bang.base().out_edges(v)) link(e.tgt, Direction::In);
      for (const auto& e : bang.base().in_edges(v)) link(e.src, Direction::Out);
    }
  }
};

}  // namespace

namespace {
Grammar run_steps(const BangGraph& g, CompilationTrace* trace, const CompilationTrace& in);
}

Compilation compile(const BangGraph& g) {
  g.validate();
  auto report = classify_overlap(g);
  if (!report.all_trivial()) {
    std::string which;
    for (const auto& p : report.pairs) {
      if (p.kind == OverlapKind::Nontrivial) {
        which = p.first + "/" + p.second;
        break;
      }
    }
    throw OverlapError("boxes " + which + " overlap non-trivially", std::move(report));
  }

  Compilation out;
  const auto& base = g.base();
  out.labeling = AlphaLabeling::for_graph(base);

  std::set<VertexId> encoded;
  std::set<std::vector<VertexId>> seen;
  std::vector<Wire> shared;
  for (const auto& p : report.pairs) {
    for (const auto& w : p.shared_wires) {
      if (seen.insert(w.vertices).second) shared.push_back(w);
    }
  }
  std::sort(shared.begin(), shared.end(),
            [](const Wire& a, const Wire& b) { return a.vertices < b.vertices; });
  for (const auto& w : shared) {
    for (const auto& v : w.interior()) {
      encoded.insert(v);
      for (const auto& b : g.boxes_containing(v)) {
        const auto& c = g.contents(b);
        if (!c.count(w.source()) && !c.count(w.target())) {
          throw CompileError("box '" + b + "' holds part of an overlap wire but neither of its endpoints");
        }
      }
    }
  }
  out.encoded_wires = shared;

  std::set<VertexId> scope;
  for (const auto& [v, _] : base.vertices()) {
    if (!encoded.count(v)) scope.insert(v);
  }
  std::set<BoxId> boxes;
  for (const auto& [b, _] : g.boxes()) boxes.insert(b);

  Planner planner{g, {}, {}};
  planner.build(scope, boxes);
  for (std::size_t k = 0; k < out.encoded_wires.size(); ++k) {
    const auto& w = out.encoded_wires[k];
    const auto su = planner.generated_at.at(w.source());
    const auto sv = planner.generated_at.at(w.target());
    if (su == sv) throw CompileError("overlap wire endpoints are generated together");
    TraceStep s;
    s.kind = TraceStep::Kind::ConnectOverlap;
    s.beta = int(k) + 1;
    if (su < sv) {
      s.source = w.source();
      s.target = w.target();
      s.dir = Direction::In;
    } else {
      s.source = w.target();
      s.target = w.source();
      s.dir = Direction::Out;
    }
    planner.trace.steps.push_back(std::move(s));
  }

  out.trace = std::move(planner.trace);
  out.grammar = run_steps(g, &out.trace, out.trace);
  return out;
}

namespace {

Grammar run_steps(const BangGraph& g, CompilationTrace* trace, const CompilationTrace& in) {
  const auto labeling = AlphaLabeling::for_graph(g.base());
  std::vector<Grammar> stack;
  int pieces = 0;
  for (std::size_t i = 0; i < in.steps.size(); ++i) {
    const auto& s = in.steps[i];
    auto top = [&]() -> Grammar& {
      if (stack.empty()) throw CompileError("trace step " + std::to_string(i) + " has no grammar to act on");
      return stack.back();
    };
    switch (s.kind) {
      case TraceStep::Kind::Concrete: {
        std::set<VertexId> vs(s.vertices.begin(), s.vertices.end());
        for (const auto& v : vs) {
          if (!g.base().has_vertex(v)) throw CompileError("trace names unknown vertex '" + v + "'");
        }
        stack.push_back(compile_concrete(g.base().induced(vs), labeling, std::to_string(++pieces)));
        break;
      }
      case TraceStep::Kind::Wrap:
        top() = wrap_in_box(top(), "[" + s.box + "]");
        break;
      case TraceStep::Kind::Chain: {
        if (stack.size() < 2) throw CompileError("chain step needs two grammars");
        Grammar second = std::move(stack.back());
        stack.pop_back();
        stack.back() = chain_disjoint(stack.back(), second);
        break;
      }
      case TraceStep::Kind::ConnectExternal:
        top() = connect_external(top(), s.source, s.target, s.dir, labeling);
        break;
      case TraceStep::Kind::ConnectOverlap:
        top() = connect_overlap(top(), s.source, s.target, s.beta, s.dir, labeling);
        break;
    }
    assert_unique_owners(stack.back());
    if (trace) trace->steps[i].productions = stack.back().productions.size();
  }
  if (stack.size() != 1) throw CompileError("trace leaves " + std::to_string(stack.size()) + " grammars");
  return std::move(stack.back());
}

}  // namespace

Grammar replay(const BangGraph& g, const CompilationTrace& trace) { return run_steps(g, nullptr, trace); }

}  // namespace bangnce
