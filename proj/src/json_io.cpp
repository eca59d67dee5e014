#include "bangnce/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bangnce {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::string str(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

const json& array(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  return v;
}

const json* optional_array(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return nullptr;
  if (!it->is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  return &*it;
}

std::set<Label> label_set(const json& j, const char* key) {
  std::set<Label> out;
  for (const auto& l : array(j, key)) {
    if (!l.is_string()) throw ParseError(std::string("'") + key + "' must hold strings");
    out.insert(l.get<std::string>());
  }
  return out;
}

Direction parse_dir(const std::string& s) {
  if (s == "in") return Direction::In;
  if (s == "out") return Direction::Out;
  throw ParseError("direction must be \"in\" or \"out\", got '" + s + "'");
}

}  // namespace

json to_json(const LabeledGraph& g) {
  json vs = json::array(), es = json::array();
  for (const auto& [id, l] : g.vertices()) vs.push_back({{"id", id}, {"label", l}});
  for (const auto& e : g.edges()) es.push_back({{"src", e.src}, {"lbl", e.label}, {"tgt", e.tgt}});
  return {{"vertices", vs}, {"edges", es}};
}

LabeledGraph graph_from_json(const json& j, bool split_loops) {
  std::vector<std::pair<VertexId, Label>> vs;
  std::vector<Edge> es;
  for (const auto& v : array(j, "vertices")) vs.emplace_back(str(v, "id"), str(v, "label"));
  for (const auto& e : array(j, "edges")) es.push_back({str(e, "src"), str(e, "lbl"), str(e, "tgt")});
  try {
    if (split_loops) return split_self_loops(vs, es);
    LabeledGraph g;
    for (const auto& [id, l] : vs) g.add_vertex(id, l);
    for (const auto& e : es) g.add_edge(e);
    return g;
  } catch (const GraphError& e) {
    throw ParseError(e.what());
  }
}

json to_json(const BangGraph& g) {
  json j = to_json(g.base());
  json boxes = json::array();
  for (const auto& [id, bx] : g.boxes()) {
    // Only immediate parents are written; the rest follows transitively.
    std::vector<BoxId> parents;
    for (const auto& a : bx.ancestors) {
      bool immediate = true;
      for (const auto& other : bx.ancestors) {
        if (other != a && g.ancestors(other).count(a)) immediate = false;
      }
      if (immediate) parents.push_back(a);
    }
    boxes.push_back({{"id", id},
                     {"contents", std::vector<VertexId>(bx.contents.begin(), bx.contents.end())},
                     {"parents", parents}});
  }
  j["boxes"] = boxes;
  return j;
}

BangGraph bang_from_json(const json& j) {
  BangGraph g(graph_from_json(j));
  struct Pending {
    BoxId id;
    std::set<VertexId> contents;
    std::set<BoxId> parents;
  };
  std::vector<Pending> pending;
  if (const json* boxes = optional_array(j, "boxes")) {
    for (const auto& b : *boxes) {
      Pending p{str(b, "id"), {}, {}};
      for (const auto& v : array(b, "contents")) {
        if (!v.is_string()) throw ParseError("box contents must be vertex ids");
        p.contents.insert(v.get<std::string>());
      }
      if (const json* parents = optional_array(b, "parents")) {
        for (const auto& v : *parents) {
          if (!v.is_string()) throw ParseError("box parents must be box ids");
          p.parents.insert(v.get<std::string>());
        }
      }
      pending.push_back(std::move(p));
    }
  }
  try {
    while (!pending.empty()) {
      bool progress = false;
      for (auto it = pending.begin(); it != pending.end();) {
        bool ready = std::all_of(it->parents.begin(), it->parents.end(),
                                 [&](const BoxId& p) { return g.has_box(p); });
        if (!ready) {
          ++it;
          continue;
        }
        g.add_box(it->id, it->contents, it->parents);
        it = pending.erase(it);
        progress = true;
      }
      if (!progress) throw ParseError("box '" + pending.front().id + "' has an unknown or cyclic parent");
    }
  } catch (const BoxError& e) {
    throw ParseError(e.what());
  }
  return g;
}

json to_json(const Grammar& g) {
  json prods = json::array();
  for (const auto& p : g.productions) {
    json cs = json::array();
    for (const auto& c : p.body.connections) {
      cs.push_back({{"sigma", c.neighbor},
                    {"old", c.old_label},
                    {"new", c.new_label},
                    {"attach", c.attach},
                    {"dir", std::string(to_string(c.dir))}});
    }
    prods.push_back({{"name", p.name}, {"lhs", p.lhs}, {"body", to_json(p.body.graph)}, {"connections", cs}});
  }
  return {{"sigma", g.sigma}, {"delta", g.delta},   {"gamma", g.gamma},
          {"omega", g.omega}, {"initial", g.initial}, {"productions", prods}};
}

Grammar grammar_from_json(const json& j) {
  Grammar g;
  g.sigma = label_set(j, "sigma");
  g.delta = label_set(j, "delta");
  g.gamma = label_set(j, "gamma");
  g.omega = label_set(j, "omega");
  g.initial = str(j, "initial");
  for (const auto& p : array(j, "productions")) {
    Production q;
    q.name = p.contains("name") ? str(p, "name") : "";
    q.lhs = str(p, "lhs");
    q.body.graph = graph_from_json(field(p, "body"));
    if (const json* cs = optional_array(p, "connections")) {
      for (const auto& c : *cs) {
        q.body.connections.insert(
            {str(c, "sigma"), str(c, "old"), str(c, "new"), str(c, "attach"), parse_dir(str(c, "dir"))});
      }
    }
    g.productions.push_back(std::move(q));
  }
  try {
    g.validate();
  } catch (const GrammarError& e) {
    throw ParseError(e.what());
  }
  return g;
}

json to_json(const CompilationTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    json j = {{"kind", std::string(to_string(s.kind))}, {"productions", s.productions}};
    switch (s.kind) {
      case TraceStep::Kind::Concrete: j["vertices"] = s.vertices; break;
      case TraceStep::Kind::Wrap: j["box"] = s.box; break;
      case TraceStep::Kind::Chain: break;
      case TraceStep::Kind::ConnectOverlap: j["beta"] = s.beta; [[fallthrough]];
      case TraceStep::Kind::ConnectExternal:
        j["source"] = s.source;
        j["target"] = s.target;
        j["dir"] = std::string(to_string(s.dir));
        break;
    }
    steps.push_back(std::move(j));
  }
  return steps;
}

CompilationTrace trace_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("trace must be an array");
  CompilationTrace t;
  for (const auto& s : j) {
    TraceStep step;
    const auto kind = str(s, "kind");
    if (kind == "concrete") {
      step.kind = TraceStep::Kind::Concrete;
      for (const auto& v : array(s, "vertices")) step.vertices.push_back(v.get<std::string>());
    } else if (kind == "wrap") {
      step.kind = TraceStep::Kind::Wrap;
      step.box = str(s, "box");
    } else if (kind == "chain") {
      step.kind = TraceStep::Kind::Chain;
    } else if (kind == "connect_external" || kind == "connect_overlap") {
      step.kind = kind == "connect_external" ? TraceStep::Kind::ConnectExternal : TraceStep::Kind::ConnectOverlap;
      step.source = str(s, "source");
      step.target = str(s, "target");
      step.dir = parse_dir(str(s, "dir"));
      if (step.kind == TraceStep::Kind::ConnectOverlap) step.beta = field(s, "beta").get<int>();
    } else {
      throw ParseError("unknown trace step '" + kind + "'");
    }
    if (s.contains("productions")) step.productions = s["productions"].get<std::size_t>();
    t.steps.push_back(std::move(step));
  }
  return t;
}

json to_json(const OverlapReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    json j = {{"first", p.first}, {"second", p.second}};
    if (p.kind == OverlapKind::Nontrivial) {
      j["kind"] = "nontrivial";
      j["offending"] = p.offending;
    } else {
      j["kind"] = p.disjoint() ? "disjoint" : "trivial";
      json wires = json::array();
      for (const auto& w : p.shared_wires) wires.push_back(w.interior());
      j["shared_wires"] = wires;
    }
    pairs.push_back(std::move(j));
  }
  return pairs;
}

json to_json(const LinearFormReport& r) {
  json out = json::array();
  for (const auto& v : r.violations) out.push_back({{"condition", v.condition}, {"detail", v.detail}});
  return out;
}

json to_json(const LanguageDiff& d) {
  json a = json::array(), b = json::array();
  for (const auto& g : d.only_in_a) a.push_back(to_json(g));
  for (const auto& g : d.only_in_b) b.push_back(to_json(g));
  return {{"only_in_a", a}, {"only_in_b", b}};
}

json to_json(const DistanceProfile& p) {
  return {{"strata", p.strata}, {"maxima", p.maxima}, {"sizes", p.sizes}, {"verdict", p.verdict()}};
}

json to_json(const IsoClassSet& s) {
  json out = json::array();
  for (const auto& [_, g] : s) out.push_back(to_json(g));
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ParseError("write to '" + path.string() + "' failed");
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace bangnce
