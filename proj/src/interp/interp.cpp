#include "mol/interp/interp.hpp"

#include <variant>

namespace mol::interp {

using lang::IrStmt;
using lang::Literal;
using lang::Op;
using lang::StmtRef;

const char *status_name(RunStatus s) {
  switch (s) {
  case RunStatus::Ok: return "ok";
  case RunStatus::RuntimeError: return "runtime-error";
  case RunStatus::StepLimit: return "step-limit";
  }
  return "?";
}

namespace {

struct ObjectRef {
  int id = -1;
  bool operator==(const ObjectRef &) const = default;
};

using Value = std::variant<lang::NullValue, std::int64_t, bool, std::string, ObjectRef>;

struct Object {
  std::string cls;
  std::map<std::string, Value> fields; // keyed Owner.f
};

struct Frame {
  int method = -1;
  int pc = 0;
  std::map<std::string, Value> vars;
};

struct Halt {
  RunStatus status;
  std::string message;
};

Value default_value(const lang::Type &t) {
  switch (t.kind) {
  case lang::Type::Kind::Int: return std::int64_t{0};
  case lang::Type::Kind::Bool: return false;
  case lang::Type::Kind::String: return std::string{};
  default: return lang::NullValue{};
  }
}

Literal to_literal(const Value &v) {
  return std::visit(
      [](const auto &x) -> Literal {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ObjectRef>)
          return lang::NullValue{};
        else
          return x;
      },
      v);
}

class Machine {
public:
  Machine(const lang::ProgramIR &ir, const RunInput &input, const std::set<slicing::CriterionPoint> &watch)
      : ir_(ir), input_(input) {
    for (const auto &p : watch) {
      watch_[p.stmt].push_back(p);
      trace_.criterion_values[p];
    }
  }

  Trace run() {
    try {
      enter(ir_.entry, lang::NullValue{}, {});
      loop();
    } catch (const Halt &h) {
      trace_.status = h.status;
      trace_.error = h.message;
    }
    return std::move(trace_);
  }

private:
  const lang::ProgramIR &ir_;
  const RunInput &input_;
  std::map<StmtRef, std::vector<slicing::CriterionPoint>> watch_;
  std::vector<Object> heap_;
  std::vector<Frame> stack_;
  Trace trace_;

  std::string text(const Value &v) const {
    if (auto o = std::get_if<ObjectRef>(&v))
      return "<" + heap_[o->id].cls + ">";
    return lang::literal_text(to_literal(v));
  }

  Object &deref(const Value &v, StmtRef at) {
    auto o = std::get_if<ObjectRef>(&v);
    if (!o)
      throw Halt{RunStatus::RuntimeError, "null dereference at " + ir_.stmt_id(at)};
    return heap_[o->id];
  }

  void enter(int method, Value self, const std::vector<Value> &args) {
    const auto &m = ir_.methods[method];
    Frame f;
    f.method = method;
    if (!m.is_entry)
      f.vars["this"] = std::move(self);
    for (std::size_t i = 0; i < m.params.size(); ++i)
      f.vars[m.params[i].name] = args[i];
    for (const auto &l : m.locals)
      f.vars[l.name] = default_value(l.type);
    stack_.push_back(std::move(f));
  }

  void record(StmtRef at) {
    auto it = watch_.find(at);
    if (it == watch_.end())
      return;
    const IrStmt &s = ir_.stmt(at);
    auto &vars = stack_.back().vars;
    for (const auto &p : it->second) {
      auto &out = trace_.criterion_values[p];
      if (p.field)
        out.push_back(text(deref(vars[s.uses[0]], at).fields[s.field_owner + "." + s.field]));
      else
        out.push_back(text(vars[p.var]));
    }
  }

  void leave(std::optional<Value> result) {
    stack_.pop_back();
    if (stack_.empty())
      return;
    Frame &caller = stack_.back();
    StmtRef site{caller.method, caller.pc};
    const IrStmt &call = ir_.stmt(site);
    if (!call.dst.empty() && result)
      caller.vars[call.dst] = *result;
    record(site);
    ++caller.pc;
  }

  Value binop(const IrStmt &s, std::map<std::string, Value> &vars, StmtRef at) {
    const Value &a = vars[s.uses[0]];
    if (s.uses.size() > 1 && (s.bop == lang::BinOp::Eq || s.bop == lang::BinOp::Ne)) {
      const Value &b = vars[s.uses[1]];
      bool ref_a = std::holds_alternative<ObjectRef>(a) || std::holds_alternative<lang::NullValue>(a);
      bool ref_b = std::holds_alternative<ObjectRef>(b) || std::holds_alternative<lang::NullValue>(b);
      if (ref_a || ref_b)
        return (a == b) == (s.bop == lang::BinOp::Eq);
    }
    Literal la = to_literal(a);
    std::optional<Literal> lb;
    if (s.uses.size() > 1)
      lb = to_literal(vars[s.uses[1]]);
    auto r = lang::fold_binop(s.bop, la, lb ? &*lb : nullptr);
    if (!r) {
      bool zero = (s.bop == lang::BinOp::Div || s.bop == lang::BinOp::Mod);
      throw Halt{RunStatus::RuntimeError,
                 std::string(zero ? "division by zero" : "invalid operands") + " at " + ir_.stmt_id(at)};
    }
    return std::visit([](const auto &x) -> Value { if constexpr (std::is_same_v<std::decay_t<decltype(x)>, lang::NullValue>) return lang::NullValue{}; else return x; }, *r);
  }

  Value allocate(const std::string &cls) {
    Object o{cls, {}};
    for (const auto *c = ir_.find_class(cls); c; c = c->super ? ir_.find_class(*c->super) : nullptr)
      for (const auto &f : c->fields)
        o.fields.emplace(c->name + "." + f.name, default_value(f.type));
    heap_.push_back(std::move(o));
    return ObjectRef{static_cast<int>(heap_.size()) - 1};
  }

  void loop() {
    while (!stack_.empty()) {
      Frame &f = stack_.back();
      const auto &m = ir_.methods[f.method];
      if (f.pc >= static_cast<int>(m.stmts.size())) {
        leave(std::nullopt);
        continue;
      }
      if (++trace_.steps > input_.step_limit)
        throw Halt{RunStatus::StepLimit, "step limit of " + std::to_string(input_.step_limit) + " exceeded"};
      StmtRef at{f.method, f.pc};
      const IrStmt &s = m.stmts[f.pc];
      auto &vars = f.vars;
      if (s.removed) {
        ++f.pc;
        continue;
      }
      switch (s.op) {
      case Op::ConstAssign:
        vars[s.dst] = std::visit([](const auto &x) -> Value { return x; }, s.lit);
        break;
      case Op::Copy:
        vars[s.dst] = vars[s.uses[0]];
        break;
      case Op::Binop:
        vars[s.dst] = binop(s, vars, at);
        break;
      case Op::FieldRead:
        vars[s.dst] = deref(vars[s.uses[0]], at).fields[s.field_owner + "." + s.field];
        break;
      case Op::FieldWrite:
        deref(vars[s.uses[0]], at).fields[s.field_owner + "." + s.field] = vars[s.uses[1]];
        break;
      case Op::New:
        vars[s.dst] = allocate(s.cls);
        break;
      case Op::Call: {
        Value recv = vars[s.uses[0]];
        const Object &o = deref(recv, at);
        int target = ir_.dispatch(o.cls, s.method);
        if (target < 0)
          throw Halt{RunStatus::RuntimeError, "no method " + s.method + " on " + o.cls};
        trace_.dispatches.insert({at, target});
        std::vector<Value> args;
        for (std::size_t i = 1; i < s.uses.size(); ++i)
          args.push_back(vars[s.uses[i]]);
        enter(target, recv, args); // invalidates f
        continue;
      }
      case Op::Print:
        if (auto str = std::get_if<std::string>(&vars[s.uses[0]]))
          trace_.output.push_back(*str);
        else
          trace_.output.push_back(text(vars[s.uses[0]]));
        break;
      case Op::Input: {
        auto it = input_.bindings.find(s.key);
        vars[s.dst] = it == input_.bindings.end() ? std::int64_t{0} : it->second;
        break;
      }
      case Op::IfGoto: {
        bool cond = std::get<bool>(vars[s.uses[0]]);
        record(at);
        f.pc = cond ? f.pc + 1 : s.target;
        continue;
      }
      case Op::Goto:
        f.pc = s.target;
        continue;
      case Op::Return: {
        std::optional<Value> result;
        if (!s.uses.empty())
          result = vars[s.uses[0]];
        record(at);
        leave(result);
        continue;
      }
      case Op::Nop:
        break;
      }
      record(at);
      ++f.pc;
    }
  }
};

} // namespace

Trace run(const lang::ProgramIR &ir, const RunInput &input, const std::set<slicing::CriterionPoint> &watch) {
  return Machine(ir, input, watch).run();
}

Trace trace_criterion(const lang::ProgramIR &ir, const slicing::SlicingCriterion &c, const RunInput &input) {
  return run(ir, input, c.points);
}

} // namespace mol::interp
