#include "mol/slicing/criterion.hpp"

#include <algorithm>
#include <cctype>

#include "mol/lang/source.hpp"

namespace mol::slicing {

using mol::AnalysisError;
using lang::IrStmt;
using lang::Op;
using lang::StmtRef;

const char *direction_name(Direction d) { return d == Direction::Backward ? "backward" : "forward"; }

namespace {

bool is_ident(const std::string &s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

[[noreturn]] void malformed(const std::string &text) {
  throw AnalysisError("malformed criterion '" + text +
                      "' (expected C.m:<k>#v, C.m:ret or C.f@writes)");
}

std::pair<std::string, std::string> split_member(const std::string &text, const std::string &lhs) {
  auto dot = lhs.find('.');
  if (dot == std::string::npos)
    malformed(text);
  std::string cls = lhs.substr(0, dot), member = lhs.substr(dot + 1);
  if (!is_ident(cls) || !is_ident(member))
    malformed(text);
  return {cls, member};
}

int method_of(const lang::ProgramIR &ir, const std::string &cls, const std::string &name) {
  int m = ir.find_method(cls, name);
  if (m < 0 && !ir.find_class(cls))
    throw AnalysisError("unknown class '" + cls + "'");
  if (m < 0)
    throw AnalysisError("unknown method '" + cls + "." + name + "'");
  return m;
}

void resolve_writes(const std::string &text, const std::string &cls, const std::string &field,
                    const Analyses &a, SlicingCriterion &c) {
  const auto &ir = a.ir;
  if (!ir.find_class(cls))
    throw AnalysisError("unknown class '" + cls + "'");
  auto owner = ir.field_owner(cls, field);
  if (!owner)
    throw AnalysisError("unknown field '" + cls + "." + field + "'");
  auto cone = ir.cone(cls);
  for (const auto &r : ir.all_stmts()) {
    const IrStmt &s = ir.stmt(r);
    if (s.removed || s.op != Op::FieldWrite || s.field != field || s.field_owner != *owner)
      continue;
    const auto &sites = a.pts.of(r.method, s.uses[0]);
    bool match = std::any_of(sites.begin(), sites.end(), [&](const StmtRef &site) {
      return std::find(cone.begin(), cone.end(), ir.stmt(site).cls) != cone.end();
    });
    if (match)
      c.points.insert({r, field, true});
  }
  if (c.points.empty())
    throw AnalysisError("criterion '" + text + "' matches no field write");
}

} // namespace

SlicingCriterion resolve_criterion(const std::string &text, const Analyses &a, Direction dir) {
  const auto &ir = a.ir;
  SlicingCriterion c;
  c.direction = dir;
  c.origin = text;

  static const std::string kWrites = "@writes";
  if (text.size() > kWrites.size() && text.ends_with(kWrites)) {
    auto [cls, field] = split_member(text, text.substr(0, text.size() - kWrites.size()));
    resolve_writes(text, cls, field, a, c);
    return c;
  }

  auto colon = text.find(':');
  if (colon == std::string::npos)
    malformed(text);
  auto [cls, name] = split_member(text, text.substr(0, colon));
  std::string rest = text.substr(colon + 1);
  int m = method_of(ir, cls, name);
  const auto &method = ir.methods[m];

  if (rest == "ret") {
    if (!method.returns_value())
      throw AnalysisError("method " + method.qualified() + " returns no value");
    for (int k = 0; k < static_cast<int>(method.stmts.size()); ++k) {
      const IrStmt &s = method.stmts[k];
      if (!s.removed && s.op == Op::Return && !s.uses.empty())
        c.points.insert({{m, k}, s.uses[0], false});
    }
    if (c.points.empty())
      throw AnalysisError("method " + method.qualified() + " has no reachable return");
    return c;
  }

  auto hash = rest.find('#');
  if (hash == std::string::npos || hash == 0)
    malformed(text);
  std::string index = rest.substr(0, hash), var = rest.substr(hash + 1);
  if (!std::all_of(index.begin(), index.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) ||
      index.size() > 9 || !is_ident(var))
    malformed(text);
  int k = std::stoi(index);
  if (k >= static_cast<int>(method.stmts.size()))
    throw AnalysisError("statement index " + index + " out of range for " + method.qualified() + " (" +
                        std::to_string(method.stmts.size()) + " statements)");
  StmtRef r{m, k};
  const IrStmt &s = ir.stmt(r);
  if (s.removed)
    throw AnalysisError("statement " + ir.stmt_id(r) + " was removed by specialization");
  auto used = lang::used_vars(s);
  if (lang::defined_var(s) == var || std::find(used.begin(), used.end(), var) != used.end())
    c.points.insert({r, var, false});
  else if ((s.op == Op::FieldRead || s.op == Op::FieldWrite) && s.field == var)
    c.points.insert({r, var, true});
  else
    throw AnalysisError("variable '" + var + "' is not defined or used at " + ir.stmt_id(r));
  return c;
}

} // namespace mol::slicing
