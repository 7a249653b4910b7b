// mol: command-line front end for the MOL slicing toolchain.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mol/analysis/specialize.hpp"
#include "mol/aspects/aspect.hpp"
#include "mol/aspects/refers_to.hpp"
#include "mol/interp/check.hpp"
#include "mol/lang/lower.hpp"
#include "mol/lang/printer.hpp"
#include "mol/lang/reconstruct.hpp"
#include "mol/lang/source.hpp"

namespace fs = std::filesystem;
using namespace mol;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string path;
  std::string spec;
  std::vector<std::string> criteria;
  std::vector<std::string> roots;
  std::vector<std::string> binds;
  std::string dir = "backward";
  std::string mode = "points-to";
  std::string format = "json";
  std::string out;
  bool emit_source = false;
  bool listing = false;
  std::uint64_t seed = 1;
  std::size_t inputs = 100;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw IoError("cannot write '" + path.string() + "'");
}

void prepare_out(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create '" + dir + "': " + ec.message());
}

std::map<std::string, std::int64_t> parse_binds(const std::vector<std::string> &binds) {
  std::map<std::string, std::int64_t> out;
  for (const auto &b : binds) {
    auto eq = b.find('=');
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument(b);
      v = std::stoll(b.substr(eq + 1), &used);
    } catch (const std::exception &) {
      throw AnalysisError("bad binding '" + b + "' (expected key=integer)");
    }
    if (used != b.size() - eq - 1)
      throw AnalysisError("bad binding '" + b + "' (expected key=integer)");
    out[b.substr(0, eq)] = v;
  }
  return out;
}

analysis::CallGraphMode parse_mode(const std::string &m) {
  return m == "cha" ? analysis::CallGraphMode::Cha : analysis::CallGraphMode::PointsTo;
}

lang::ProgramIR load(const Options &o) { return lang::compile(read_file(o.path)); }

/// Program after optional specialization; warnings go to stderr.
lang::ProgramIR load_specialized(const Options &o) {
  auto ir = load(o);
  auto binds = parse_binds(o.binds);
  if (binds.empty())
    return ir;
  auto sp = analysis::specialize(ir, ir.entry, binds);
  for (const auto &w : sp.warnings)
    std::cerr << "warning: " << w << "\n";
  return std::move(sp.ir);
}

void emit(const Options &o, const std::string &file, const std::string &text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  prepare_out(o.out);
  write_file(fs::path(o.out) / file, text);
}

int cmd_check(const Options &o) {
  auto ir = load(o);
  std::cout << o.path << ": ok (" << ir.classes.size() << " classes, " << ir.methods.size() << " methods, "
            << ir.stmt_count() << " statements)\n";
  if (o.listing)
    std::cout << lang::pretty_print(ir);
  return 0;
}

int cmd_run(const Options &o) {
  auto ir = load(o);
  interp::RunInput in;
  in.bindings = parse_binds(o.binds);
  auto t = interp::run(ir, in);
  for (const auto &line : t.output)
    std::cout << line << "\n";
  if (t.status != interp::RunStatus::Ok) {
    std::cerr << interp::status_name(t.status) << ": " << t.error << "\n";
    return 1;
  }
  return 0;
}

int cmd_slice(const Options &o) {
  if (o.criteria.empty())
    throw AnalysisError("slice needs at least one -c criterion");
  auto a = slicing::analyze(load_specialized(o), parse_mode(o.mode));
  auto sdg = slicing::build_full_sdg(a);
  auto dir = o.dir == "forward" ? slicing::Direction::Forward : slicing::Direction::Backward;
  std::vector<slicing::SliceResult> results;
  for (const auto &c : o.criteria)
    results.push_back(slicing::slice(sdg, a.ir, slicing::resolve_criterion(c, a, dir)));
  auto merged = slicing::merge_slices(results);
  emit(o, "slice.json", slicing::slice_json(a.ir, merged));
  if (o.emit_source)
    emit(o, "slice.mol", lang::reconstruct_source(a.ir, merged.statements).source);
  return 0;
}

int write_report(const Options &o, const lang::ProgramIR &ir, const std::vector<aspects::AspectSlice> &slices) {
  auto report = aspects::diff(slices);
  if (o.out.empty()) {
    std::cout << aspects::render_report(report, o.format, &ir);
    return 0;
  }
  prepare_out(o.out);
  write_file(fs::path(o.out) / "report.json", aspects::render_report(report, "json"));
  write_file(fs::path(o.out) / "report.html", aspects::render_report(report, "html", &ir));
  return 0;
}

int cmd_aspect(const Options &o) {
  auto ir = load(o);
  auto specs = aspects::parse_aspect_spec(read_file(o.spec));
  auto slices = aspects::extract_aspects(ir, specs, parse_mode(o.mode));
  if (!o.out.empty()) {
    prepare_out(o.out);
    for (std::size_t i = 0; i < slices.size(); ++i) {
      // Bound aspects were sliced on the specialized program.
      auto base = specs[i].bind.empty() ? ir : analysis::specialize(ir, ir.entry, specs[i].bind).ir;
      write_file(fs::path(o.out) / (slices[i].name + ".mol"),
                 lang::reconstruct_source(base, slices[i].slice.statements).source);
    }
  }
  return write_report(o, ir, slices);
}

int cmd_diff(const Options &o) {
  if (o.criteria.empty())
    throw AnalysisError("diff needs at least one -c criterion");
  auto a = slicing::analyze(load_specialized(o), parse_mode(o.mode));
  auto sdg = slicing::build_full_sdg(a);
  std::vector<aspects::AspectSlice> slices;
  for (const auto &c : o.criteria)
    slices.push_back(aspects::extract_aspect(a, sdg, c, {c}));
  return write_report(o, a.ir, slices);
}

int cmd_refers_to(const Options &o) {
  auto ir = load(o);
  auto pts = analysis::points_to(ir, parse_mode(o.mode));
  auto g = aspects::build_refers_to(ir, analysis::call_graph(ir, parse_mode(o.mode), &pts));
  std::set<std::string> roots(o.roots.begin(), o.roots.end());
  nlohmann::json j;
  j["roots"] = roots;
  j["closure"] = aspects::refers_to_closure(g, roots);
  emit(o, "refers-to.json", j.dump(2) + "\n");
  return 0;
}

int cmd_check_slice(const Options &o) {
  if (o.criteria.empty())
    throw AnalysisError("check-slice needs at least one -c criterion");
  auto binds = parse_binds(o.binds);
  auto a = slicing::analyze(load_specialized(o), parse_mode(o.mode));
  auto sdg = slicing::build_full_sdg(a);
  auto inputs = interp::random_inputs(a.ir, o.inputs, o.seed, binds);
  nlohmann::json all = nlohmann::json::array();
  bool ok = true;
  for (const auto &c : o.criteria) {
    auto v = interp::check_slice(a, sdg, slicing::resolve_criterion(c, a), inputs);
    ok = ok && v.kind == interp::VerdictKind::Pass;
    nlohmann::json j;
    j["criterion"] = c;
    j["verdict"] = interp::verdict_name(v.kind);
    j["compared"] = v.compared;
    j["skipped"] = v.skipped;
    j["message"] = v.message;
    j["counterexamples"] = nlohmann::json::array();
    for (const auto &in : v.counterexamples)
      j["counterexamples"].push_back(in.bindings);
    all.push_back(j);
  }
  emit(o, "check-slice.json", all.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_specialize(const Options &o) {
  auto ir = load_specialized(o);
  std::set<lang::StmtRef> keep;
  for (const auto &r : ir.all_stmts())
    if (!ir.stmt(r).removed)
      keep.insert(r);
  emit(o, "specialized.mol", lang::reconstruct_source(ir, keep).source);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"MOL functional-aspect extraction toolchain"};
  app.require_subcommand(1);
  Options o;
  const std::map<std::string, std::string> dirs{{"backward", "backward"}, {"forward", "forward"}};
  const std::map<std::string, std::string> modes{{"cha", "cha"}, {"points-to", "points-to"}};
  const std::map<std::string, std::string> formats{{"json", "json"}, {"html", "html"}};

  auto add = [&](const std::string &name, const std::string &help) {
    auto *sub = app.add_subcommand(name, help);
    sub->add_option("file", o.path, "MOL source file")->required();
    return sub;
  };
  auto with_mode = [&](CLI::App *sub) {
    sub->add_option("--mode", o.mode, "call-graph mode")->transform(CLI::CheckedTransformer(modes));
  };
  auto with_bind = [&](CLI::App *sub) { sub->add_option("--bind", o.binds, "input binding k=v (repeatable)"); };
  auto with_out = [&](CLI::App *sub) { sub->add_option("--out", o.out, "output directory"); };
  auto with_criteria = [&](CLI::App *sub) {
    sub->add_option("-c,--criterion", o.criteria, "slicing criterion (repeatable)");
  };

  auto *check = add("check", "parse, type-check and lower a program");
  check->add_flag("--ir", o.listing, "print the lowered statements with their ids");
  auto *run = add("run", "execute a program");
  with_bind(run);
  auto *slice = add("slice", "slice a program");
  with_criteria(slice);
  slice->add_option("--dir", o.dir, "backward or forward")->transform(CLI::CheckedTransformer(dirs));
  with_mode(slice);
  with_bind(slice);
  with_out(slice);
  slice->add_flag("--emit-source", o.emit_source, "also emit the reconstructed program");
  auto *aspect = add("aspect", "extract the aspects of a spec file and report");
  aspect->add_option("spec", o.spec, "aspect spec (JSON)")->required();
  with_mode(aspect);
  with_out(aspect);
  aspect->add_option("--format", o.format)->transform(CLI::CheckedTransformer(formats));
  auto *refers = add("refers-to", "refers-to closure of members");
  refers->add_option("roots", o.roots, "root members (Class.member)")->required();
  with_mode(refers);
  with_out(refers);
  auto *diff = add("diff", "report on the slices of several criteria");
  with_criteria(diff);
  with_mode(diff);
  with_bind(diff);
  with_out(diff);
  diff->add_option("--format", o.format)->transform(CLI::CheckedTransformer(formats));
  auto *check_slice = add("check-slice", "verify slices by execution on random inputs");
  with_criteria(check_slice);
  with_mode(check_slice);
  with_bind(check_slice);
  with_out(check_slice);
  check_slice->add_option("--seed", o.seed, "random seed");
  check_slice->add_option("--inputs", o.inputs, "number of random input vectors");
  auto *specialize = add("specialize", "bind inputs and prune infeasible branches");
  with_bind(specialize);
  with_out(specialize);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(check)) return cmd_check(o);
    if (app.got_subcommand(run)) return cmd_run(o);
    if (app.got_subcommand(slice)) return cmd_slice(o);
    if (app.got_subcommand(aspect)) return cmd_aspect(o);
    if (app.got_subcommand(refers)) return cmd_refers_to(o);
    if (app.got_subcommand(diff)) return cmd_diff(o);
    if (app.got_subcommand(check_slice)) return cmd_check_slice(o);
    if (app.got_subcommand(specialize)) return cmd_specialize(o);
  } catch (const IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CompileError &e) {
    for (const auto &d : e.diagnostics())
      std::cerr << o.path << ":" << d.str() << "\n";
    return 1;
  } catch (const AnalysisError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
