#include "mol/slicing/slicer.hpp"

#include <algorithm>

#include "json.hpp"
#include "mol/lang/source.hpp"

namespace mol::slicing {

using lang::IrStmt;
using lang::Op;
using lang::StmtRef;

std::set<int> seed_nodes(const Sdg &sdg, const lang::ProgramIR &ir, const CriterionPoint &p) {
  const int stmt = sdg.stmt_node.at(p.stmt);
  const IrStmt &s = ir.stmt(p.stmt);
  if (p.field || s.op != Op::Call)
    return {stmt};
  std::set<int> seeds;
  if (s.dst == p.var) {
    auto ao = sdg.actual_out.find(p.stmt);
    seeds.insert(ao != sdg.actual_out.end() ? ao->second : stmt);
  }
  if (s.uses[0] == p.var)
    seeds.insert(stmt);
  for (int i = 0; i + 1 < static_cast<int>(s.uses.size()); ++i)
    if (s.uses[i + 1] == p.var)
      seeds.insert(sdg.actual_in.at({p.stmt, i}));
  if (seeds.empty())
    seeds.insert(stmt);
  return seeds;
}

namespace {

enum class Step { Skip, PhaseOne, PhaseTwo };

template <typename Rule>
SliceResult traverse(const Sdg &sdg, const lang::ProgramIR &ir, const SlicingCriterion &c, bool backward,
                     Rule rule) {
  std::vector<int> phase(sdg.nodes.size(), 0);
  std::set<int> work;
  auto visit = [&](int n, int ph) {
    if (phase[n] == 0 || (ph == 1 && phase[n] == 2)) {
      phase[n] = ph;
      work.insert(n);
    }
  };
  for (const auto &p : c.points)
    for (int s : seed_nodes(sdg, ir, p))
      visit(s, 1);

  while (!work.empty()) {
    int n = *work.begin();
    work.erase(work.begin());
    const int ph = phase[n];
    for (int ei : backward ? sdg.in[n] : sdg.out[n]) {
      const SdgEdge &e = sdg.edges[ei];
      Step step = rule(e, ph);
      if (step != Step::Skip)
        visit(backward ? e.from : e.to, step == Step::PhaseOne ? 1 : 2);
    }
  }

  SliceResult r;
  r.criterion = c;
  for (int n = 0; n < static_cast<int>(phase.size()); ++n) {
    if (!phase[n])
      continue;
    r.nodes.insert(n);
    if (auto s = sdg.statement_of(n))
      r.statements.insert(*s);
  }
  return r;
}

} // namespace

SliceResult backward_slice(const Sdg &sdg, const lang::ProgramIR &ir, const SlicingCriterion &c) {
  if (c.direction != Direction::Backward)
    throw mol::AnalysisError("backward_slice needs a backward criterion");
  return traverse(sdg, ir, c, true, [](const SdgEdge &e, int ph) {
    if (ph == 1)
      return e.kind == EdgeKind::ParamOut ? Step::PhaseTwo : Step::PhaseOne;
    if (e.kind == EdgeKind::Call || e.kind == EdgeKind::ParamIn)
      return Step::Skip;
    return e.heap ? Step::PhaseOne : Step::PhaseTwo;
  });
}

SliceResult forward_slice(const Sdg &sdg, const lang::ProgramIR &ir, const SlicingCriterion &c) {
  if (c.direction != Direction::Forward)
    throw mol::AnalysisError("forward_slice needs a forward criterion");
  return traverse(sdg, ir, c, false, [](const SdgEdge &e, int ph) {
    if (ph == 1)
      return e.kind == EdgeKind::ParamIn || e.kind == EdgeKind::Call ? Step::PhaseTwo : Step::PhaseOne;
    if (e.kind == EdgeKind::ParamOut)
      return Step::Skip;
    return e.heap ? Step::PhaseOne : Step::PhaseTwo;
  });
}

SliceResult slice(const Sdg &sdg, const lang::ProgramIR &ir, const SlicingCriterion &c) {
  return c.direction == Direction::Backward ? backward_slice(sdg, ir, c) : forward_slice(sdg, ir, c);
}

SliceResult merge_slices(const std::vector<SliceResult> &results) {
  if (results.empty())
    throw mol::AnalysisError("nothing to merge");
  SliceResult out;
  out.criterion.direction = results.front().criterion.direction;
  std::vector<std::string> origins;
  for (const auto &r : results) {
    if (r.criterion.direction != out.criterion.direction)
      throw mol::AnalysisError("cannot merge backward and forward slices");
    out.criterion.points.insert(r.criterion.points.begin(), r.criterion.points.end());
    out.statements.insert(r.statements.begin(), r.statements.end());
    out.nodes.insert(r.nodes.begin(), r.nodes.end());
    if (std::find(origins.begin(), origins.end(), r.criterion.origin) == origins.end())
      origins.push_back(r.criterion.origin);
  }
  for (std::size_t i = 0; i < origins.size(); ++i)
    out.criterion.origin += (i ? ", " : "") + origins[i];
  return out;
}

SliceMembers slice_members(const lang::ProgramIR &ir, const std::set<StmtRef> &stmts) {
  SliceMembers m;
  auto add_class = [&](const std::string &cls) {
    if (ir.find_class(cls))
      m.classes.insert(cls);
  };
  for (const auto &r : stmts) {
    const auto &method = ir.methods[r.method];
    m.methods.insert(method.qualified());
    if (!method.is_entry)
      add_class(method.owner);
    const IrStmt &s = ir.stmt(r);
    if (s.op == Op::FieldRead || s.op == Op::FieldWrite) {
      m.fields.insert(s.field_owner + "." + s.field);
      add_class(s.field_owner);
    } else if (s.op == Op::New) {
      add_class(s.cls);
    }
  }
  return m;
}

std::string slice_json(const lang::ProgramIR &ir, const SliceResult &r) {
  std::vector<std::string> ids;
  for (const auto &s : r.statements)
    ids.push_back(ir.stmt_id(s));
  std::sort(ids.begin(), ids.end());
  auto members = slice_members(ir, r.statements);
  nlohmann::json j;
  j["criterion"] = r.criterion.origin;
  j["direction"] = direction_name(r.criterion.direction);
  j["statements"] = ids;
  j["members"] = {{"classes", members.classes}, {"methods", members.methods}, {"fields", members.fields}};
  return j.dump(2) + "\n";
}

std::vector<std::string> propose_criteria(const Analyses &a, int method) {
  const auto &ir = a.ir;
  const auto &m = ir.methods.at(method);
  std::vector<std::string> out;
  auto try_add = [&](const std::string &text) {
    if (std::find(out.begin(), out.end(), text) != out.end())
      return;
    try {
      resolve_criterion(text, a);
      out.push_back(text);
    } catch (const mol::AnalysisError &) {
    }
  };

  if (m.returns_value())
    try_add(m.qualified() + ":ret");

  // Field writes of the method first, then of its transitive callees.
  std::vector<int> order{method};
  for (int callee : a.cg.reach(method))
    if (callee != method)
      order.push_back(callee);
  for (int mi : order)
    for (const auto &s : ir.methods[mi].stmts)
      if (!s.removed && s.op == Op::FieldWrite)
        try_add(s.field_owner + "." + s.field + "@writes");

  for (int k = 0; k < static_cast<int>(m.stmts.size()); ++k) {
    const auto &s = m.stmts[k];
    if (!s.removed && s.op == Op::Print)
      try_add(m.qualified() + ":" + std::to_string(k) + "#" + s.uses[0]);
  }
  return out;
}

} // namespace mol::slicing
