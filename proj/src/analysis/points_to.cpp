#include "mol/analysis/points_to.hpp"

#include <deque>

namespace mol::analysis {

using lang::IrStmt;
using lang::Op;
using lang::StmtRef;

const char *mode_name(CallGraphMode mode) {
  return mode == CallGraphMode::Cha ? "cha" : "points-to";
}

const SiteSet &PointsToResult::of(int method, const std::string &var) const {
  static const SiteSet empty;
  auto it = vars.find({method, var});
  return it == vars.end() ? empty : it->second;
}

const SiteSet &PointsToResult::of_field(const std::string &key) const {
  static const SiteSet empty;
  auto it = fields.find(key);
  return it == fields.end() ? empty : it->second;
}

std::set<int> cha_targets(const lang::ProgramIR &ir, const IrStmt &call) {
  std::set<int> out;
  for (const auto &c : ir.cone(call.cls)) {
    int m = ir.dispatch(c, call.method);
    if (m >= 0)
      out.insert(m);
  }
  return out;
}

namespace {

class Solver {
public:
  Solver(const lang::ProgramIR &ir, CallGraphMode mode) : ir_(ir) { r_.mode = mode; }

  PointsToResult run() {
    r_.reachable.insert(ir_.entry);
    // Plain round-robin to fixpoint; programs here are small and this keeps
    // the iteration order fixed.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int m : std::set<int>(r_.reachable))
        changed = visit_method(m) || changed;
    }
    return std::move(r_);
  }

private:
  const lang::ProgramIR &ir_;
  PointsToResult r_;

  static bool merge(SiteSet &into, const SiteSet &from) {
    std::size_t before = into.size();
    into.insert(from.begin(), from.end());
    return into.size() != before;
  }

  SiteSet &var(int m, const std::string &v) { return r_.vars[{m, v}]; }

  bool visit_method(int m) {
    bool changed = false;
    const auto &stmts = ir_.methods[m].stmts;
    for (std::size_t k = 0; k < stmts.size(); ++k) {
      const IrStmt &s = stmts[k];
      if (s.removed)
        continue;
      StmtRef here{m, static_cast<int>(k)};
      switch (s.op) {
      case Op::New:
        changed = var(m, s.dst).insert(here).second || changed;
        break;
      case Op::Copy:
        changed = merge(var(m, s.dst), SiteSet(var(m, s.uses[0]))) || changed;
        break;
      case Op::FieldRead:
        if (!var(m, s.uses[0]).empty())
          changed = merge(var(m, s.dst), SiteSet(r_.fields[s.field_owner + "." + s.field])) || changed;
        break;
      case Op::FieldWrite:
        if (!var(m, s.uses[0]).empty())
          changed = merge(r_.fields[s.field_owner + "." + s.field], SiteSet(var(m, s.uses[1]))) || changed;
        break;
      case Op::Return:
        if (!s.uses.empty())
          changed = merge(r_.returns[m], SiteSet(var(m, s.uses[0]))) || changed;
        break;
      case Op::Call:
        changed = visit_call(m, here, s) || changed;
        break;
      default:
        break;
      }
    }
    return changed;
  }

  bool visit_call(int m, StmtRef here, const IrStmt &s) {
    bool changed = false;
    const SiteSet recv = var(m, s.uses[0]);
    std::map<int, SiteSet> receivers; // target -> receiver sites dispatching to it
    for (const auto &site : recv) {
      int t = ir_.dispatch(ir_.stmt(site).cls, s.method);
      if (t >= 0)
        receivers[t].insert(site);
    }
    std::set<int> targets;
    if (r_.mode == CallGraphMode::Cha) {
      targets = cha_targets(ir_, s);
    } else {
      for (const auto &[t, _] : receivers)
        targets.insert(t);
    }
    auto &known = r_.call_targets[here];
    for (int t : targets) {
      changed = known.insert(t).second || changed;
      changed = r_.reachable.insert(t).second || changed;
      const auto &callee = ir_.methods[t];
      if (receivers.count(t))
        changed = merge(var(t, "this"), receivers[t]) || changed;
      for (std::size_t i = 0; i < callee.params.size() && i + 1 < s.uses.size(); ++i)
        changed = merge(var(t, callee.params[i].name), SiteSet(var(m, s.uses[i + 1]))) || changed;
      if (!s.dst.empty())
        changed = merge(var(m, s.dst), SiteSet(r_.returns[t])) || changed;
    }
    return changed;
  }
};

std::set<int> reachable_from(const CallGraph &cg, int from) {
  std::set<int> seen{from};
  std::deque<int> work{from};
  while (!work.empty()) {
    int m = work.front();
    work.pop_front();
    for (const auto &[site, ts] : cg.targets) {
      if (site.method != m)
        continue;
      for (int t : ts)
        if (seen.insert(t).second)
          work.push_back(t);
    }
  }
  return seen;
}

} // namespace

PointsToResult points_to(const lang::ProgramIR &ir, CallGraphMode mode) {
  return Solver(ir, mode).run();
}

std::vector<StmtRef> CallGraph::unresolved() const {
  std::vector<StmtRef> out;
  for (const auto &[site, ts] : targets)
    if (ts.empty())
      out.push_back(site);
  return out;
}

std::set<std::pair<StmtRef, int>> CallGraph::edges() const {
  std::set<std::pair<StmtRef, int>> out;
  for (const auto &[site, ts] : targets)
    for (int t : ts)
      out.insert({site, t});
  return out;
}

std::vector<StmtRef> CallGraph::callers_of(int method) const {
  std::vector<StmtRef> out;
  for (const auto &[site, ts] : targets)
    if (ts.count(method))
      out.push_back(site);
  return out;
}

std::set<int> CallGraph::reach(int from) const { return reachable_from(*this, from); }

CallGraph call_graph(const lang::ProgramIR &ir, CallGraphMode mode, const PointsToResult *pts) {
  CallGraph cg;
  cg.mode = mode;
  if (mode == CallGraphMode::Cha) {
    for (const auto &r : ir.all_stmts()) {
      const IrStmt &s = ir.stmt(r);
      if (!s.removed && s.op == Op::Call)
        cg.targets[r] = cha_targets(ir, s);
    }
  } else {
    PointsToResult local;
    if (!pts) {
      local = points_to(ir, CallGraphMode::PointsTo);
      pts = &local;
    }
    for (int m : pts->reachable) {
      const auto &stmts = ir.methods[m].stmts;
      for (std::size_t k = 0; k < stmts.size(); ++k) {
        if (stmts[k].removed || stmts[k].op != Op::Call)
          continue;
        StmtRef r{m, static_cast<int>(k)};
        auto it = pts->call_targets.find(r);
        cg.targets[r] = it == pts->call_targets.end() ? std::set<int>{} : it->second;
      }
    }
  }
  cg.reachable = reachable_from(cg, ir.entry);
  return cg;
}

} // namespace mol::analysis
