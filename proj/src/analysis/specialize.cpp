#include "mol/analysis/specialize.hpp"

#include <functional>
#include <set>

#include "mol/analysis/cfg.hpp"

namespace mol::analysis {

using lang::IrStmt;
using lang::Literal;
using lang::Op;

namespace {

struct Lattice {
  enum class Kind { Top, Const, Bottom };
  Kind kind = Kind::Top;
  Literal value;

  static Lattice bottom() { return {Kind::Bottom, {}}; }
  static Lattice constant(Literal v) { return {Kind::Const, std::move(v)}; }
  bool operator==(const Lattice &) const = default;
};

using State = std::map<std::string, Lattice>;

Lattice meet(const Lattice &a, const Lattice &b) {
  if (a.kind == Lattice::Kind::Top)
    return b;
  if (b.kind == Lattice::Kind::Top)
    return a;
  if (a.kind == Lattice::Kind::Const && b.kind == Lattice::Kind::Const && a.value == b.value)
    return a;
  return Lattice::bottom();
}

void collect_while_preds(const std::vector<lang::Region> &regions, std::set<int> &out) {
  for (const auto &r : regions) {
    if (r.kind == lang::Region::Kind::While)
      out.insert(r.stmt);
    collect_while_preds(r.then_body, out);
    collect_while_preds(r.else_body, out);
  }
}

class MethodSccp {
public:
  explicit MethodSccp(lang::MethodIR &m) : m_(m), cfg_(build_cfg(m, 0)) {
    for (const auto &p : m_.params)
      if (tracked_type(p.type))
        tracked_.insert(p.name);
    for (const auto &l : m_.locals)
      if (tracked_type(l.type))
        tracked_.insert(l.name);
  }

  void run() {
    const int n = cfg_.stmt_count;
    State entry_out;
    for (const auto &p : m_.params)
      if (tracked_.count(p.name))
        entry_out[p.name] = Lattice::bottom();
    for (const auto &l : m_.locals) {
      if (l.type.kind == lang::Type::Kind::Int)
        entry_out[l.name] = Lattice::constant(std::int64_t{0});
      else if (l.type.kind == lang::Type::Kind::Bool)
        entry_out[l.name] = Lattice::constant(false);
    }
    out_.assign(cfg_.node_count(), State{});
    out_[cfg_.entry()] = entry_out;
    std::set<int> work;
    for (int s : cfg_.succ[cfg_.entry()]) {
      executable_.insert({cfg_.entry(), s});
      if (s < n)
        work.insert(s);
    }
    std::vector<bool> visited(cfg_.node_count(), false);
    while (!work.empty()) {
      int k = *work.begin();
      work.erase(work.begin());
      State in = incoming(k);
      State out = transfer(k, in);
      bool changed = !visited[k] || out != out_[k];
      visited[k] = true;
      out_[k] = std::move(out);
      for (int s : live_successors(k, in)) {
        bool fresh = executable_.insert({k, s}).second;
        if ((fresh || changed) && s < n)
          work.insert(s);
      }
    }

    std::set<int> while_preds;
    collect_while_preds(m_.body, while_preds);
    for (int k = 0; k < n; ++k) {
      IrStmt &s = m_.stmts[k];
      if (!reached(k)) {
        s.removed = true;
        continue;
      }
      if (s.op != Op::IfGoto)
        continue;
      auto cond = eval(incoming(k), s.uses[0]);
      if (cond.kind != Lattice::Kind::Const)
        continue;
      bool taken = std::get<bool>(cond.value);
      if (!taken) {
        s.op = Op::Goto;
        s.uses.clear();
      } else if (!while_preds.count(k)) {
        s.op = Op::Nop;
        s.uses.clear();
        s.target = -1;
      }
    }
  }

private:
  lang::MethodIR &m_;
  Cfg cfg_;
  std::set<std::string> tracked_;
  std::set<std::pair<int, int>> executable_;
  std::vector<State> out_;

  static bool tracked_type(const lang::Type &t) {
    return t.kind == lang::Type::Kind::Int || t.kind == lang::Type::Kind::Bool;
  }

  bool reached(int k) const {
    for (int p : cfg_.pred[k])
      if (executable_.count({p, k}))
        return true;
    return false;
  }

  State incoming(int k) const {
    State in;
    bool first = true;
    for (int p : cfg_.pred[k]) {
      if (!executable_.count({p, k}))
        continue;
      if (first) {
        in = out_[p];
        first = false;
        continue;
      }
      for (const auto &[v, lat] : out_[p])
        in[v] = meet(in.count(v) ? in[v] : Lattice{}, lat);
    }
    return in;
  }

  Lattice eval(const State &st, const std::string &v) const {
    if (!tracked_.count(v))
      return Lattice::bottom();
    auto it = st.find(v);
    return it == st.end() ? Lattice{} : it->second;
  }

  State transfer(int k, State st) const {
    const IrStmt &s = m_.stmts[k];
    if (s.removed || s.dst.empty() || !tracked_.count(s.dst))
      return st;
    Lattice result = Lattice::bottom();
    switch (s.op) {
    case Op::ConstAssign:
      if (std::holds_alternative<std::int64_t>(s.lit) || std::holds_alternative<bool>(s.lit))
        result = Lattice::constant(s.lit);
      break;
    case Op::Copy:
      result = eval(st, s.uses[0]);
      break;
    case Op::Binop: {
      std::vector<Lattice> ops;
      for (const auto &u : s.uses)
        ops.push_back(eval(st, u));
      bool any_top = false, any_bottom = false;
      for (const auto &o : ops) {
        any_top = any_top || o.kind == Lattice::Kind::Top;
        any_bottom = any_bottom || o.kind == Lattice::Kind::Bottom;
      }
      if (any_bottom) {
        result = Lattice::bottom();
      } else if (any_top) {
        result = Lattice{};
      } else {
        auto folded = lang::fold_binop(s.bop, ops[0].value, ops.size() > 1 ? &ops[1].value : nullptr);
        result = folded ? Lattice::constant(*folded) : Lattice::bottom();
      }
      break;
    }
    default:
      break;
    }
    st[s.dst] = result;
    return st;
  }

  std::vector<int> live_successors(int k, const State &in) const {
    const IrStmt &s = m_.stmts[k];
    if (s.removed || s.op != Op::IfGoto)
      return cfg_.succ[k];
    Lattice c = eval(in, s.uses[0]);
    if (c.kind == Lattice::Kind::Top)
      return {};
    if (c.kind == Lattice::Kind::Const) {
      // succ[0] is the fall-through (condition true), succ[1] the jump.
      return {cfg_.succ[k][std::get<bool>(c.value) ? 0 : 1]};
    }
    return cfg_.succ[k];
  }
};

void collect_inputs(const lang::ProgramIR &ir, std::set<std::string> &keys) {
  for (const auto &m : ir.methods)
    for (const auto &s : m.stmts)
      if (s.op == Op::Input && !s.removed)
        keys.insert(s.key);
}

} // namespace

Specialization specialize(const lang::ProgramIR &ir, int entry,
                          const std::map<std::string, std::int64_t> &bindings) {
  (void)entry;
  Specialization out{ir, {}};
  std::set<std::string> keys;
  collect_inputs(ir, keys);
  for (const auto &[k, _] : bindings)
    if (!keys.count(k))
      out.warnings.push_back("binding '" + k + "' is never read by input(\"" + k + "\")");
  if (bindings.empty())
    return out;

  for (auto &m : out.ir.methods) {
    for (auto &s : m.stmts) {
      if (s.op != Op::Input || s.removed)
        continue;
      auto it = bindings.find(s.key);
      if (it == bindings.end())
        continue;
      s.op = Op::ConstAssign;
      s.lit = it->second;
    }
  }
  for (auto &m : out.ir.methods)
    MethodSccp(m).run();
  return out;
}

} // namespace mol::analysis
