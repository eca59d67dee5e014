#include "bangnce/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "bangnce/compiler.hpp"
#include "bangnce/dot.hpp"
#include "bangnce/json_io.hpp"
#include "bangnce/lang_equiv.hpp"

namespace bangnce {

namespace {

struct Options {
  std::string input;
  std::string second;
  std::string output;
  std::string trace;
  std::string dot;
  std::string manifest;
  std::string op;
  std::string box;
  std::string kind = "auto";
  std::string mode = "homeo";
  std::vector<int> strata;
  int budget_ops = 8;
  int budget_steps = 24;
  int budget_vertices = 10;
  bool strict = false;
  bool directed = false;
};

class Run {
 public:
  Run(std::string command, std::ostream& out, std::ostream& err)
      : command_(std::move(command)), out_(out), err_(err), start_(std::chrono::steady_clock::now()) {}

  json load(const std::string& path) {
    json digest = {{"path", path}};
    try {
      json j = read_json_file(path);
      digest["fnv1a64"] = hex64(fnv1a64(j.dump()));
      inputs_.push_back(std::move(digest));
      return j;
    } catch (...) {
      inputs_.push_back(std::move(digest));
      throw;
    }
  }

  // Writes to `path`, or to stdout when empty.
  void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
      out_ << text;
    } else {
      write_text_file(path, text);
      outputs_.push_back(path);
    }
  }

  void budgets(json b) { budgets_ = std::move(b); }

  int finish(int code, const std::string& manifest_path) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    json m = {{"command", command_}, {"inputs", inputs_},   {"budgets", budgets_},
              {"version", kVersion}, {"outputs", outputs_}, {"exit_code", code},
              {"duration_ms", ms}};
    if (manifest_path.empty()) {
      err_ << m.dump() << "\n";
    } else {
      try {
        write_text_file(manifest_path, m.dump(2) + "\n");
      } catch (const ParseError& e) {
        err_ << "error: " << e.what() << "\n";
        return kExitParse;
      }
    }
    return code;
  }

  std::ostream& err() { return err_; }

 private:
  std::string command_;
  std::ostream& out_;
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
  json inputs_ = json::array();
  json budgets_ = json::object();
  json outputs_ = json::array();
};

std::uint64_t seed_from_env() {
  const char* s = std::getenv("BANGNCE_SEED");
  if (!s || !*s) return 0;
  char* end = nullptr;
  auto v = std::strtoull(s, &end, 10);
  if (*end) throw ParseError(std::string("BANGNCE_SEED must be an unsigned integer, got '") + s + "'");
  return v;
}

bool looks_like_grammar(const json& j) { return j.is_object() && j.contains("productions"); }

int cmd_validate(Run& run, const Options& o) {
  json j = run.load(o.input);
  json report;
  bool ok = true;
  const bool grammar = o.kind == "grammar" || (o.kind == "auto" && looks_like_grammar(j));
  if (grammar) {
    Grammar g = grammar_from_json(j);
    auto lf = check_bang_linear_form(g);
    report = {{"kind", "grammar"},
              {"linear", is_linear(g)},
              {"confluent", is_confluent(g)},
              {"bang_linear_form", to_json(lf)}};
    if (o.strict && !lf.ok()) ok = false;
  } else {
    BangGraph g = bang_from_json(j);
    json sg = json::array();
    auto svr = validate_string_graph(g.base());
    for (const auto& v : svr.violations) sg.push_back(v.message());
    json boxes = json::array();
    json overlap = json::array();
    bool bgto = true;
    if (svr.ok()) {
      for (const auto& v : g.violations()) boxes.push_back(v);
      if (boxes.empty()) {
        auto r = classify_overlap(g);
        overlap = to_json(r);
        bgto = r.all_trivial();
      }
    }
    report = {{"kind", g.is_concrete() ? "graph" : "bang"},
              {"string_graph", sg},
              {"boxes", boxes},
              {"overlap", overlap},
              {"bgto", bgto}};
    ok = svr.ok() && boxes.empty() && (!o.strict || bgto);
  }
  report["ok"] = ok;
  run.emit(o.output, report.dump(2) + "\n");
  if (!ok && report.value("bgto", true) == false) return kExitOutOfFragment;
  return ok ? kExitOk : kExitFailure;
}

int cmd_op(Run& run, const Options& o) {
  BangGraph g = bang_from_json(run.load(o.input));
  g.validate();
  BangGraph r = o.op == "expand" ? expand(g, o.box) : kill(g, o.box);
  run.emit(o.output, to_json(r).dump(2) + "\n");
  if (!o.dot.empty()) run.emit(o.dot, to_dot(r));
  return kExitOk;
}

int cmd_compile(Run& run, const Options& o) {
  BangGraph g = bang_from_json(run.load(o.input));
  Compilation c = compile(g);
  run.emit(o.output, to_json(c.grammar).dump(2) + "\n");
  if (!o.trace.empty()) run.emit(o.trace, to_json(c.trace).dump(2) + "\n");
  if (!o.dot.empty()) run.emit(o.dot, to_dot(c.grammar));
  return kExitOk;
}

IsoClassSet enumerate_file(Run& run, const std::string& path, const std::string& kind, const Options& o) {
  json j = run.load(path);
  const bool grammar = kind == "grammar" || (kind == "auto" && looks_like_grammar(j));
  if (grammar) {
    GrammarEnumerationOptions opts;
    opts.exploration_seed = seed_from_env();
    return enumerate_grammar_language(grammar_from_json(j), {o.budget_steps, o.budget_vertices}, opts);
  }
  BangGraph g = bang_from_json(j);
  g.validate();
  return enumerate_language(g, {o.budget_ops, o.budget_vertices});
}

int cmd_enumerate(Run& run, const Options& o) {
  auto set = enumerate_file(run, o.input, o.kind, o);
  run.emit(o.output, to_json(set).dump(2) + "\n");
  if (!o.dot.empty()) {
    std::string all;
    std::size_t i = 0;
    for (const auto& [_, g] : set) all += to_dot(g, "instance" + std::to_string(i++));
    run.emit(o.dot, all);
  }
  return kExitOk;
}

int cmd_check_equiv(Run& run, const Options& o) {
  auto mode = parse_mode(o.mode);
  if (!mode) throw ParseError("unknown mode '" + o.mode + "'");
  auto a = enumerate_file(run, o.input, "bang", o);
  auto b = enumerate_file(run, o.second, "grammar", o);
  if (*mode == EquivalenceMode::Wire) {
    // The vertex budget applies to decoded instances.
    const auto limit = std::size_t(o.budget_vertices);
    b = b.filter([&](const LabeledGraph& g) { return wire_decode(g).vertex_count() <= limit; });
  }
  auto r = equal_up_to(a, b, *mode);
  json report = {{"equal", r.equal}, {"mode", std::string(to_string(*mode))},
                 {"sizes", {a.size(), b.size()}}, {"diff", to_json(r.diff)}};
  run.emit(o.output, report.dump(2) + "\n");
  return r.equal ? kExitOk : kExitFailure;
}

int cmd_probe(Run& run, const Options& o) {
  json j = run.load(o.input);
  const bool grammar = o.kind == "grammar" || (o.kind == "auto" && looks_like_grammar(j));
  DistanceProfile p;
  if (grammar) {
    auto strata = o.strata.empty() ? std::vector<int>{4, 6, 8, 10, 12} : o.strata;
    p = boundedness_probe(grammar_from_json(j), strata, o.budget_vertices, o.directed);
  } else {
    auto strata = o.strata.empty() ? std::vector<int>{2, 4, 6, 8, 10} : o.strata;
    BangGraph g = bang_from_json(j);
    g.validate();
    p = boundedness_probe(g, strata, o.budget_vertices, o.directed);
  }
  run.emit(o.output, to_json(p).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"!-graphs, edNCE grammars and the compiler between them", "bangnce"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;
  app.add_option("--manifest", o.manifest, "Write the run manifest here instead of stderr");

  auto budget_flags = [&](CLI::App* c) {
    c->add_option("--budget-ops", o.budget_ops, "Maximum !-box operations")->check(CLI::NonNegativeNumber);
    c->add_option("--budget-steps", o.budget_steps, "Maximum derivation steps")->check(CLI::NonNegativeNumber);
    c->add_option("--budget-vertices", o.budget_vertices, "Maximum vertices per instance")
        ->check(CLI::NonNegativeNumber);
  };

  auto* validate = app.add_subcommand("validate", "Check a graph, !-graph or grammar file");
  validate->add_option("input", o.input)->required();
  validate->add_option("-o,--output", o.output);
  validate->add_option("--kind", o.kind)->check(CLI::IsMember({"auto", "bang", "grammar"}));
  validate->add_flag("--strict", o.strict, "Also fail on non-trivial overlap or !-linear form violations");

  auto* op = app.add_subcommand("op", "Apply EXPAND or KILL to one box");
  op->add_option("op", o.op)->required()->check(CLI::IsMember({"expand", "kill"}));
  op->add_option("input", o.input)->required();
  op->add_option("box", o.box)->required();
  op->add_option("-o,--output", o.output);
  op->add_option("--dot", o.dot);

  auto* comp = app.add_subcommand("compile", "Compile a !-graph to a LIN-edNCE grammar");
  comp->add_option("input", o.input)->required();
  comp->add_option("-o,--output", o.output);
  comp->add_option("--trace", o.trace);
  comp->add_option("--dot", o.dot);

  auto* en = app.add_subcommand("enumerate", "List a bounded slice of a language");
  en->add_option("kind", o.kind)->required()->check(CLI::IsMember({"bang", "grammar"}));
  en->add_option("input", o.input)->required();
  en->add_option("-o,--output", o.output);
  en->add_option("--dot", o.dot);
  budget_flags(en);

  auto* eq = app.add_subcommand("check-equiv", "Compare a !-graph language with a grammar language");
  eq->add_option("bang", o.input)->required();
  eq->add_option("grammar", o.second)->required();
  eq->add_option("-o,--output", o.output);
  eq->add_option("--mode", o.mode)->check(CLI::IsMember({"iso", "homeo", "wire", "wire-encoding"}));
  budget_flags(eq);

  auto* probe = app.add_subcommand("probe", "Maximum distance per budget stratum");
  probe->add_option("input", o.input)->required();
  probe->add_option("-o,--output", o.output);
  probe->add_option("--kind", o.kind)->check(CLI::IsMember({"auto", "bang", "grammar"}));
  probe->add_option("--strata", o.strata, "Budgets to probe (ops or steps)")->delimiter(',');
  probe->add_option("--budget-vertices", o.budget_vertices);
  probe->add_flag("--directed", o.directed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Run run(chosen->get_name(), out, err);
  if (chosen == en || chosen == eq) {
    run.budgets({{"ops", o.budget_ops}, {"steps", o.budget_steps}, {"vertices", o.budget_vertices}});
  } else if (chosen == probe) {
    run.budgets({{"strata", o.strata}, {"vertices", o.budget_vertices}});
  }
  int code = kExitOk;
  try {
    if (chosen == validate) code = cmd_validate(run, o);
    if (chosen == op) code = cmd_op(run, o);
    if (chosen == comp) code = cmd_compile(run, o);
    if (chosen == en) code = cmd_enumerate(run, o);
    if (chosen == eq) code = cmd_check_equiv(run, o);
    if (chosen == probe) code = cmd_probe(run, o);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    code = kExitParse;
  } catch (const OverlapError& e) {
    err << "error: " << e.what() << "\n" << to_json(e.report()).dump(2) << "\n";
    code = kExitOutOfFragment;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    code = kExitFailure;
  }
  return run.finish(code, o.manifest);
}

}  // namespace bangnce
