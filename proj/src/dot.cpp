#include "bangnce/dot.hpp"

#include <sstream>

namespace bangnce {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string vertex_attrs(const Label& l) {
  switch (label_kind(l)) {
    case LabelKind::Wire: return "shape=point";
    case LabelKind::Node: return "shape=circle, label=" + quote(l);
    case LabelKind::Nonterminal: return "shape=box, label=" + quote(l);
  }
  return "";
}

void write_body(std::ostream& os, const LabeledGraph& g, const std::string& prefix, const char* indent) {
  for (const auto& [id, l] : g.vertices()) {
    os << indent << quote(prefix + id) << " [" << vertex_attrs(l) << "];\n";
  }
  for (const auto& e : g.edges()) {
    os << indent << quote(prefix + e.src) << " -> " << quote(prefix + e.tgt);
    if (e.label != kPlainEdge) os << " [label=" << quote(e.label) << "]";
    os << ";\n";
  }
}

}  // namespace

std::string to_dot(const LabeledGraph& g, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n";
  write_body(os, g, "", "  ");
  os << "}\n";
  return os.str();
}

std::string to_dot(const BangGraph& g, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n";
  write_body(os, g.base(), "", "  ");
  for (const auto& [id, bx] : g.boxes()) {
    const std::string b = "!" + id;
    os << "  " << quote(b) << " [shape=box, style=dashed, label=" << quote("! " + id) << "];\n";
    for (const auto& v : bx.contents) {
      os << "  " << quote(b) << " -> " << quote(v) << " [style=dotted, arrowhead=none];\n";
    }
    for (const auto& a : bx.ancestors) {
      os << "  " << quote(b) << " -> " << quote("!" + a) << " [style=dashed, label=\"<=\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const Grammar& g, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n  compound=true;\n";
  for (std::size_t i = 0; i < g.productions.size(); ++i) {
    const auto& p = g.productions[i];
    const std::string prefix = "p" + std::to_string(i) + ":";
    os << "  subgraph " << quote("cluster_" + std::to_string(i)) << " {\n";
    os << "    label=" << quote(p.lhs + " ::= " + p.name) << ";\n";
    if (p.body.graph.empty()) os << "    " << quote(prefix + "empty") << " [shape=plaintext, label=\"(empty)\"];\n";
    write_body(os, p.body.graph, prefix, "    ");
    os << "  }\n";
    std::size_t k = 0;
    for (const auto& c : p.body.connections) {
      const std::string out = prefix + "c" + std::to_string(k++);
      os << "  " << quote(out) << " [shape=point, style=invis];\n";
      std::string text = c.neighbor + " " + c.old_label + "/" + c.new_label;
      if (c.dir == Direction::In) {
        os << "  " << quote(out) << " -> " << quote(prefix + c.attach);
      } else {
        os << "  " << quote(prefix + c.attach) << " -> " << quote(out);
      }
      os << " [label=" << quote(text) << ", style=dashed];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace bangnce
