#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bangnce/bang_graph.hpp"
#include "bangnce/compiler.hpp"
#include "bangnce/ednce.hpp"
#include "bangnce/iso_class_set.hpp"
#include "bangnce/lang_equiv.hpp"

namespace bangnce {

using json = nlohmann::json;

// Malformed or unreadable input.
class ParseError : public Error {
 public:
  using Error::Error;
};

json to_json(const LabeledGraph& g);
// Self-loops are rejected unless `split_loops`, which routes each one
// through a fresh wire-vertex instead.
LabeledGraph graph_from_json(const json& j, bool split_loops = false);

json to_json(const BangGraph& g);
// Boxes may be listed in any order; parents are resolved first.
BangGraph bang_from_json(const json& j);

json to_json(const Grammar& g);
Grammar grammar_from_json(const json& j);

json to_json(const CompilationTrace& t);
CompilationTrace trace_from_json(const json& j);

json to_json(const OverlapReport& r);
json to_json(const LinearFormReport& r);
json to_json(const LanguageDiff& d);
json to_json(const DistanceProfile& p);

// Array of graphs sorted by canonical key.
json to_json(const IsoClassSet& s);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace bangnce
