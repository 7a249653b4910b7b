#include "mol/aspects/aspect.hpp"

#include <algorithm>
#include <optional>

#include "json.hpp"
#include "mol/analysis/specialize.hpp"
#include "mol/lang/source.hpp"

namespace mol::aspects {

using lang::Op;

std::vector<AspectSpec> parse_aspect_spec(const std::string &json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw AnalysisError(std::string("aspect spec: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("aspects") || !j["aspects"].is_array())
    throw AnalysisError("aspect spec: expected an object with an \"aspects\" array");
  std::vector<AspectSpec> out;
  std::set<std::string> names;
  for (const auto &item : j["aspects"]) {
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string())
      throw AnalysisError("aspect spec: every aspect needs a string \"name\"");
    AspectSpec spec;
    spec.name = item["name"].get<std::string>();
    if (spec.name.empty())
      throw AnalysisError("aspect spec: empty aspect name");
    if (!names.insert(spec.name).second)
      throw AnalysisError("aspect spec: duplicate aspect name '" + spec.name + "'");
    if (!item.contains("criteria") || !item["criteria"].is_array() || item["criteria"].empty())
      throw AnalysisError("aspect spec: aspect '" + spec.name + "' needs a non-empty \"criteria\" array");
    for (const auto &c : item["criteria"]) {
      if (!c.is_string())
        throw AnalysisError("aspect spec: aspect '" + spec.name + "' has a non-string criterion");
      spec.criteria.push_back(c.get<std::string>());
    }
    if (item.contains("bind")) {
      if (!item["bind"].is_object())
        throw AnalysisError("aspect spec: aspect '" + spec.name + "' has a non-object \"bind\"");
      for (const auto &[k, v] : item["bind"].items()) {
        if (!v.is_number_integer())
          throw AnalysisError("aspect spec: binding '" + k + "' of aspect '" + spec.name + "' is not an integer");
        spec.bind[k] = v.get<std::int64_t>();
      }
    }
    for (const auto &[k, _] : item.items())
      if (k != "name" && k != "criteria" && k != "bind")
        throw AnalysisError("aspect spec: unknown key '" + k + "' in aspect '" + spec.name + "'");
    out.push_back(std::move(spec));
  }
  if (out.empty())
    throw AnalysisError("aspect spec: no aspects");
  return out;
}

AspectSlice extract_aspect(const slicing::Analyses &a, const slicing::Sdg &sdg, const std::string &name,
                           const std::vector<std::string> &criteria) {
  if (criteria.empty())
    throw AnalysisError("aspect '" + name + "': no criteria");
  const auto &ir = a.ir;
  std::vector<slicing::SliceResult> results;
  for (const auto &text : criteria) {
    try {
      results.push_back(slicing::backward_slice(sdg, ir, slicing::resolve_criterion(text, a)));
    } catch (const AnalysisError &e) {
      throw AnalysisError("aspect '" + name + "': " + e.what());
    }
  }
  AspectSlice out;
  out.name = name;
  out.criteria = criteria;
  out.slice = slicing::merge_slices(results);
  out.members = slicing::slice_members(ir, out.slice.statements);
  for (const auto &p : out.slice.criterion.points)
    if (p.field)
      out.members.fields.insert(ir.stmt(p.stmt).field_owner + "." + p.var);

  for (const auto &r : out.slice.statements)
    out.method_statements[ir.methods[r.method].qualified()].insert(ir.stmt_id(r));
  for (int m = 0; m < static_cast<int>(ir.methods.size()); ++m) {
    const auto &method = ir.methods[m];
    auto it = out.method_statements.find(method.qualified());
    if (it == out.method_statements.end())
      continue;
    bool full = true;
    for (int k = 0; k < static_cast<int>(method.stmts.size()) && full; ++k) {
      const auto &s = method.stmts[k];
      if (s.removed || s.op == Op::Nop || s.op == Op::Goto)
        continue;
      full = out.slice.statements.count({m, k}) > 0;
    }
    if (!full)
      out.partial_methods.insert(*it);
  }
  return out;
}

std::vector<AspectSlice> extract_aspects(const lang::ProgramIR &ir, const std::vector<AspectSpec> &specs,
                                         analysis::CallGraphMode mode) {
  std::optional<slicing::Analyses> base;
  std::optional<slicing::Sdg> base_sdg;
  std::vector<AspectSlice> out;
  for (const auto &spec : specs) {
    if (spec.bind.empty()) {
      if (!base) {
        base = slicing::analyze(ir, mode);
        base_sdg = slicing::build_full_sdg(*base);
      }
      out.push_back(extract_aspect(*base, *base_sdg, spec.name, spec.criteria));
      continue;
    }
    auto special = analysis::specialize(ir, ir.entry, spec.bind);
    auto a = slicing::analyze(std::move(special.ir), mode);
    out.push_back(extract_aspect(a, slicing::build_full_sdg(a), spec.name, spec.criteria));
  }
  return out;
}

namespace {

void check_unique(const std::vector<AspectSlice> &aspects) {
  std::set<std::string> names;
  for (const auto &a : aspects)
    if (!names.insert(a.name).second)
      throw AnalysisError("duplicate aspect name '" + a.name + "'");
}

} // namespace

MemberClassification classify_members(const std::vector<AspectSlice> &aspects) {
  check_unique(aspects);
  MemberClassification c;
  std::map<std::string, std::vector<const AspectSlice *>> holders;
  for (const auto &a : aspects) {
    for (const auto &m : a.members.classes)
      holders[m].push_back(&a);
    for (const auto &m : a.members.fields)
      holders[m].push_back(&a);
  }
  for (const auto &[member, in] : holders) {
    if (in.size() == 1)
      c.exclusive[in.front()->name].insert(member);
    else
      c.shared.insert(member);
  }

  std::map<std::string, std::vector<const AspectSlice *>> methods;
  for (const auto &a : aspects)
    for (const auto &m : a.members.methods)
      methods[m].push_back(&a);
  for (const auto &[method, in] : methods) {
    if (in.size() == 1) {
      c.exclusive[in.front()->name].insert(method);
      continue;
    }
    bool shared = true;
    for (const auto *a : in)
      shared = shared && !a->partial_methods.count(method) &&
               a->method_statements.at(method) == in.front()->method_statements.at(method);
    (shared ? c.shared : c.multiply_defined).insert(method);
  }
  return c;
}

DiffReport diff(const std::vector<AspectSlice> &aspects) {
  check_unique(aspects);
  DiffReport r;
  for (const auto &a : aspects)
    r.aspects.push_back(a.name);
  std::sort(r.aspects.begin(), r.aspects.end());

  std::map<std::string, std::vector<std::string>> classes, methods, fields, statements;
  for (const auto &a : aspects) {
    for (const auto &m : a.members.classes)
      classes[m].push_back(a.name);
    for (const auto &m : a.members.methods)
      methods[m].push_back(a.name);
    for (const auto &m : a.members.fields)
      fields[m].push_back(a.name);
    for (const auto &[_, ids] : a.method_statements)
      for (const auto &id : ids)
        statements[id].push_back(a.name);
  }
  std::map<std::vector<std::string>, Cell> cells;
  auto bucket = [&](const auto &by_member, std::set<std::string> Cell::*slot) {
    for (auto [member, in] : by_member) {
      std::sort(in.begin(), in.end());
      auto &cell = cells[in];
      cell.in = in;
      (cell.*slot).insert(member);
    }
  };
  bucket(classes, &Cell::classes);
  bucket(methods, &Cell::methods);
  bucket(fields, &Cell::fields);
  bucket(statements, &Cell::statements);
  for (auto &[_, cell] : cells)
    r.cells.push_back(std::move(cell));

  for (const auto &a : aspects) {
    AspectStats s;
    s.aspect = a.name;
    s.sliced_classes = a.members.classes.size();
    for (const auto &cls : a.members.classes)
      s.exclusive_classes += classes[cls].size() == 1;
    s.methods = a.members.methods.size();
    s.fields = a.members.fields.size();
    s.statements = a.slice.statements.size();
    r.stats.push_back(s);
  }
  std::sort(r.stats.begin(), r.stats.end(),
            [](const AspectStats &x, const AspectStats &y) { return x.aspect < y.aspect; });
  r.classification = classify_members(aspects);
  return r;
}

} // namespace mol::aspects
