#include "mol/lang/lower.hpp"

#include <set>

#include "mol/lang/checker.hpp"
#include "mol/lang/parser.hpp"

namespace mol::lang {

namespace {

class MethodLowerer {
public:
  MethodLowerer(const ClassTable &table, MethodIR &out) : table_(table), m_(out) {
    taken_.insert("this");
    for (const auto &p : m_.params)
      taken_.insert(p.name);
  }

  void lower_body(const Block &body, Span body_span) {
    collect_names(body);
    m_.body = lower_block(body);
    bool needs_nop = false;
    for (const auto &s : m_.stmts)
      if ((s.op == Op::IfGoto || s.op == Op::Goto) &&
          s.target == static_cast<int>(m_.stmts.size()))
        needs_nop = true;
    if (needs_nop) {
      Span close{body_span.end > 0 ? body_span.end - 1 : 0, body_span.end};
      Region r;
      r.stmt = emit(IrStmt{.op = Op::Nop, .span = close});
      m_.body.push_back(r);
    }
  }

private:
  const ClassTable &table_;
  MethodIR &m_;
  std::set<std::string> taken_;
  int next_temp_ = 0;

  void collect_names(const Block &b) {
    for (const auto &s : b) {
      if (s->kind == Stmt::Kind::VarDecl) {
        taken_.insert(s->name);
        m_.locals.push_back({s->name, s->decl_type});
      }
      collect_names(s->then_body);
      collect_names(s->else_body);
    }
  }

  std::string fresh(const Type &t) {
    std::string name;
    do {
      name = "_t" + std::to_string(next_temp_++);
    } while (taken_.count(name));
    taken_.insert(name);
    m_.locals.push_back({name, t});
    return name;
  }

  int emit(IrStmt s) {
    m_.stmts.push_back(std::move(s));
    return static_cast<int>(m_.stmts.size()) - 1;
  }

  int here() const { return static_cast<int>(m_.stmts.size()); }

  /// Returns the variable holding the value of `e`; leaf variables need no statement.
  std::string value_of(const Expr &e, const Type &hint, std::vector<Region> *out) {
    if (e.kind == Expr::Kind::Var)
      return e.text;
    if (e.kind == Expr::Kind::This)
      return "this";
    Type t = e.type.kind == Type::Kind::Null ? hint : e.type;
    std::string tmp = fresh(t);
    lower_into(e, tmp, e.span, out);
    return tmp;
  }

  void push_simple(int idx, std::vector<Region> *out) {
    Region r;
    r.stmt = idx;
    if (out)
      out->push_back(r);
  }

  void lower_into(const Expr &e, const std::string &dst, Span span, std::vector<Region> *out) {
    IrStmt s;
    s.dst = dst;
    s.span = span;
    switch (e.kind) {
    case Expr::Kind::IntLit:
      s.op = Op::ConstAssign;
      s.lit = e.int_value;
      break;
    case Expr::Kind::BoolLit:
      s.op = Op::ConstAssign;
      s.lit = e.bool_value;
      break;
    case Expr::Kind::StrLit:
      s.op = Op::ConstAssign;
      s.lit = e.text;
      break;
    case Expr::Kind::Null:
      s.op = Op::ConstAssign;
      s.lit = NullValue{};
      break;
    case Expr::Kind::This:
      s.op = Op::Copy;
      s.uses = {"this"};
      break;
    case Expr::Kind::Var:
      s.op = Op::Copy;
      s.uses = {e.text};
      break;
    case Expr::Kind::New:
      s.op = Op::New;
      s.cls = e.text;
      break;
    case Expr::Kind::Input:
      s.op = Op::Input;
      s.key = e.text;
      break;
    case Expr::Kind::Field:
      s.uses = {value_of(*e.children[0], Type::Void(), out)};
      s.op = Op::FieldRead;
      s.field = e.text;
      s.field_owner = e.resolved_owner;
      break;
    case Expr::Kind::Call:
      lower_call(e, dst, span, out);
      return;
    case Expr::Kind::Unary:
      s.uses = {value_of(*e.children[0], Type::Void(), out)};
      s.op = Op::Binop;
      s.bop = e.op;
      break;
    case Expr::Kind::Binary: {
      const Expr &l = *e.children[0];
      const Expr &r = *e.children[1];
      std::string a = value_of(l, r.type, out);
      std::string b = value_of(r, l.type, out);
      s.op = Op::Binop;
      s.bop = e.op;
      s.uses = {a, b};
      break;
    }
    }
    push_simple(emit(std::move(s)), out);
  }

  void lower_call(const Expr &e, const std::string &dst, Span span, std::vector<Region> *out) {
    IrStmt s;
    s.op = Op::Call;
    s.dst = dst;
    s.span = span;
    s.method = e.text;
    s.cls = e.children[0]->type.cls;
    s.callee_owner = e.resolved_owner;
    s.uses.push_back(value_of(*e.children[0], Type::Void(), out));
    const MethodDecl *decl = table_.lookup_method(s.cls, s.method);
    for (std::size_t i = 1; i < e.children.size(); ++i) {
      Type hint = decl && i - 1 < decl->params.size() ? decl->params[i - 1].type : Type::Void();
      s.uses.push_back(value_of(*e.children[i], hint, out));
    }
    push_simple(emit(std::move(s)), out);
  }

  std::vector<Region> lower_block(const Block &b) {
    std::vector<Region> out;
    for (const auto &s : b)
      lower_stmt(*s, out);
    return out;
  }

  void lower_stmt(const Stmt &s, std::vector<Region> &out) {
    switch (s.kind) {
    case Stmt::Kind::VarDecl:
      if (s.value)
        lower_into(*s.value, s.name, s.span, &out);
      break;
    case Stmt::Kind::Assign:
      lower_into(*s.value, s.name, s.span, &out);
      break;
    case Stmt::Kind::FieldAssign: {
      IrStmt w;
      w.op = Op::FieldWrite;
      w.span = s.span;
      w.field = s.name;
      Type ft = Type::Void();
      if (s.target->type.kind == Type::Kind::Class) {
        std::string owner;
        if (const FieldDecl *f = table_.lookup_field(s.target->type.cls, s.name, &owner)) {
          w.field_owner = owner;
          ft = f->type;
        }
      }
      std::string base = value_of(*s.target, Type::Void(), &out);
      std::string src = value_of(*s.value, ft, &out);
      w.uses = {base, src};
      push_simple(emit(std::move(w)), &out);
      break;
    }
    case Stmt::Kind::Print: {
      std::string v = value_of(*s.value, Type::Void(), &out);
      push_simple(emit(IrStmt{.op = Op::Print, .uses = {v}, .span = s.span}), &out);
      break;
    }
    case Stmt::Kind::ExprStmt:
      lower_call(*s.value, "", s.span, &out);
      break;
    case Stmt::Kind::Return: {
      IrStmt r{.op = Op::Return, .span = s.span};
      if (s.value)
        r.uses = {value_of(*s.value, m_.ret, &out)};
      push_simple(emit(std::move(r)), &out);
      break;
    }
    case Stmt::Kind::If: {
      std::string c = value_of(*s.value, Type::Bool(), &out);
      Region r;
      r.kind = Region::Kind::If;
      r.stmt = emit(IrStmt{.op = Op::IfGoto, .uses = {c}, .span = s.span});
      r.then_body = lower_block(s.then_body);
      r.has_else = s.has_else;
      if (s.has_else) {
        r.jump = emit(IrStmt{.op = Op::Goto, .span = s.span});
        m_.stmts[r.stmt].target = here();
        r.else_body = lower_block(s.else_body);
        m_.stmts[r.jump].target = here();
      } else {
        m_.stmts[r.stmt].target = here();
      }
      out.push_back(std::move(r));
      break;
    }
    case Stmt::Kind::While: {
      Region r;
      r.kind = Region::Kind::While;
      r.cond_begin = here();
      std::string c = value_of(*s.value, Type::Bool(), nullptr);
      r.cond_end = here();
      r.stmt = emit(IrStmt{.op = Op::IfGoto, .uses = {c}, .span = s.span});
      r.then_body = lower_block(s.then_body);
      r.jump = emit(IrStmt{.op = Op::Goto, .target = r.cond_begin, .span = s.span});
      m_.stmts[r.stmt].target = here();
      out.push_back(std::move(r));
      break;
    }
    }
  }
};

} // namespace

ProgramIR lower(const Ast &ast) {
  ClassTable table(ast);
  ProgramIR ir;
  ir.source = ast.source;
  for (const auto &c : ast.classes) {
    ClassIR cir;
    cir.name = c.name;
    cir.super = c.super;
    for (const auto &f : c.fields)
      cir.fields.push_back({f.name, f.type});
    for (const auto &m : c.methods) {
      MethodIR mir;
      mir.owner = c.name;
      mir.name = m.name;
      mir.ret = m.ret;
      mir.span = m.span;
      for (const auto &p : m.params)
        mir.params.push_back({p.name, p.type});
      MethodLowerer(table, mir).lower_body(m.body, m.body_span);
      cir.methods.push_back(static_cast<int>(ir.methods.size()));
      ir.methods.push_back(std::move(mir));
    }
    ir.classes.push_back(std::move(cir));
  }
  MethodIR entry;
  entry.owner = "Main";
  entry.name = "main";
  entry.ret = Type::Void();
  entry.span = ast.main_span;
  entry.is_entry = true;
  MethodLowerer(table, entry).lower_body(ast.main_block, ast.main_body_span);
  ir.entry = static_cast<int>(ir.methods.size());
  ir.methods.push_back(std::move(entry));
  return ir;
}

ProgramIR compile(std::string source) {
  Ast ast = parse(std::move(source));
  resolve_and_check(ast);
  return lower(ast);
}

} // namespace mol::lang
