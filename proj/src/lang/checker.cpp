#include "mol/lang/checker.hpp"

#include <set>

namespace mol::lang {

ClassTable::ClassTable(const Ast &ast) {
  for (const auto &c : ast.classes)
    classes_.emplace(c.name, &c);
}

const ClassDecl *ClassTable::find(const std::string &name) const {
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : it->second;
}

std::optional<std::string> ClassTable::super_of(const std::string &name) const {
  const ClassDecl *c = find(name);
  if (!c || !c->super || !has_class(*c->super))
    return std::nullopt;
  return c->super;
}

const FieldDecl *ClassTable::lookup_field(const std::string &cls, const std::string &field,
                                          std::string *owner) const {
  std::set<std::string> seen;
  for (std::optional<std::string> cur = cls; cur && seen.insert(*cur).second; cur = super_of(*cur)) {
    const ClassDecl *c = find(*cur);
    if (!c)
      return nullptr;
    for (const auto &f : c->fields) {
      if (f.name == field) {
        if (owner)
          *owner = c->name;
        return &f;
      }
    }
  }
  return nullptr;
}

const MethodDecl *ClassTable::lookup_method(const std::string &cls, const std::string &method,
                                            std::string *owner) const {
  std::set<std::string> seen;
  for (std::optional<std::string> cur = cls; cur && seen.insert(*cur).second; cur = super_of(*cur)) {
    const ClassDecl *c = find(*cur);
    if (!c)
      return nullptr;
    for (const auto &m : c->methods) {
      if (m.name == method) {
        if (owner)
          *owner = c->name;
        return &m;
      }
    }
  }
  return nullptr;
}

bool ClassTable::is_subclass(const std::string &sub, const std::string &super) const {
  std::set<std::string> seen;
  for (std::optional<std::string> cur = sub; cur && seen.insert(*cur).second; cur = super_of(*cur))
    if (*cur == super)
      return true;
  return false;
}

bool ClassTable::assignable(const Type &to, const Type &from) const {
  if (to == from)
    return true;
  if (to.kind == Type::Kind::Class && from.kind == Type::Kind::Null)
    return true;
  if (to.kind == Type::Kind::Class && from.kind == Type::Kind::Class)
    return is_subclass(from.cls, to.cls);
  return false;
}

namespace {

class Checker {
public:
  explicit Checker(Ast &ast) : ast_(ast), table_(ast) {}

  void run() {
    check_hierarchy();
    for (auto &c : ast_.classes) {
      for (auto &f : c.fields)
        check_type(f.type, f.span);
      for (auto &m : c.methods)
        check_method(c, m);
    }
    current_class_.clear();
    locals_.clear();
    return_type_ = Type::Void();
    check_block(ast_.main_block);
    if (!diags_.empty())
      throw CompileError(std::move(diags_));
  }

private:
  Ast &ast_;
  ClassTable table_;
  std::vector<Diagnostic> diags_;
  std::string current_class_;
  std::map<std::string, Type> locals_;
  Type return_type_;

  void error(Span span, std::string msg) {
    // A mismatch over an expression that already failed is a follow-on error.
    if (msg.rfind("type mismatch", 0) == 0)
      for (const auto &d : diags_)
        if (span.contains(d.span))
          return;
    diags_.push_back({span, position_of(ast_.source, span.begin), std::move(msg)});
  }

  void check_type(const Type &t, Span span) {
    if (t.kind == Type::Kind::Class && !table_.has_class(t.cls))
      error(span, "unknown name '" + t.cls + "'");
  }

  void check_hierarchy() {
    for (const auto &c : ast_.classes) {
      if (c.super && !table_.has_class(*c.super))
        error(c.span, "unknown name '" + *c.super + "'");
    }
    for (const auto &c : ast_.classes) {
      std::set<std::string> seen{c.name};
      const ClassDecl *cur = &c;
      while (cur->super) {
        const ClassDecl *next = table_.find(*cur->super);
        if (!next)
          break;
        if (!seen.insert(next->name).second) {
          error(c.span, "inheritance cycle involving class '" + c.name + "'");
          break;
        }
        cur = next;
      }
    }
  }

  bool hierarchy_ok(const std::string &cls) const {
    std::set<std::string> seen;
    for (std::optional<std::string> cur = cls; cur; cur = table_.super_of(*cur))
      if (!seen.insert(*cur).second)
        return false;
    return true;
  }

  void check_method(const ClassDecl &c, MethodDecl &m) {
    current_class_ = c.name;
    locals_.clear();
    return_type_ = m.ret;
    check_type(m.ret, m.span);
    for (const auto &p : m.params) {
      check_type(p.type, p.span);
      locals_[p.name] = p.type;
    }
    if (c.super && hierarchy_ok(c.name)) {
      std::string owner;
      const MethodDecl *base = table_.lookup_method(*c.super, m.name, &owner);
      if (base) {
        bool same = base->ret == m.ret && base->params.size() == m.params.size();
        for (std::size_t i = 0; same && i < m.params.size(); ++i)
          same = base->params[i].type == m.params[i].type;
        if (!same)
          error(m.span, "override signature clash: '" + c.name + "." + m.name +
                            "' does not match '" + owner + "." + m.name + "'");
      }
    }
    check_block(m.body);
  }

  void check_block(Block &b) {
    for (auto &s : b)
      check_stmt(*s);
  }

  void expect(const Type &to, const Expr &e, const char *what) {
    if (e.type.kind == Type::Kind::Void && to.kind == Type::Kind::Void)
      return;
    if (!table_.assignable(to, e.type))
      error(e.span, std::string("type mismatch in ") + what + ": expected " + to.str() +
                        ", found " + e.type.str());
  }

  void check_stmt(Stmt &s) {
    switch (s.kind) {
    case Stmt::Kind::VarDecl:
      check_type(s.decl_type, s.span);
      if (locals_.count(s.name))
        error(s.span, "duplicate declaration of variable '" + s.name + "'");
      if (s.value) {
        check_expr(*s.value);
        expect(s.decl_type, *s.value, "initializer");
      }
      locals_[s.name] = s.decl_type;
      break;
    case Stmt::Kind::Assign: {
      check_expr(*s.value);
      auto it = locals_.find(s.name);
      if (it == locals_.end())
        error(s.span, "unknown name '" + s.name + "'");
      else
        expect(it->second, *s.value, "assignment");
      break;
    }
    case Stmt::Kind::FieldAssign: {
      check_expr(*s.target);
      check_expr(*s.value);
      Type ft = field_type(*s.target, s.name, s.span, nullptr);
      if (ft.kind != Type::Kind::Void)
        expect(ft, *s.value, "field assignment");
      break;
    }
    case Stmt::Kind::If:
    case Stmt::Kind::While:
      check_expr(*s.value);
      expect(Type::Bool(), *s.value, "condition");
      check_block(s.then_body);
      check_block(s.else_body);
      break;
    case Stmt::Kind::Return:
      if (s.value) {
        check_expr(*s.value);
        if (return_type_.kind == Type::Kind::Void)
          error(s.span, "type mismatch in return: method returns void");
        else
          expect(return_type_, *s.value, "return");
      } else if (return_type_.kind != Type::Kind::Void) {
        error(s.span, "type mismatch in return: expected " + return_type_.str());
      }
      break;
    case Stmt::Kind::Print:
      check_expr(*s.value);
      if (s.value->type.kind == Type::Kind::Void || s.value->type.kind == Type::Kind::Null)
        error(s.value->span, "type mismatch in print: " + s.value->type.str() + " value");
      break;
    case Stmt::Kind::ExprStmt:
      check_expr(*s.value);
      break;
    }
  }

  Type field_type(const Expr &object, const std::string &name, Span span, std::string *owner) {
    if (object.type.kind != Type::Kind::Class) {
      if (object.type.kind != Type::Kind::Void)
        error(span, "type mismatch: field access on " + object.type.str());
      return Type::Void();
    }
    std::string decl_owner;
    const FieldDecl *f = table_.lookup_field(object.type.cls, name, &decl_owner);
    if (!f) {
      error(span, "unknown name '" + object.type.cls + "." + name + "'");
      return Type::Void();
    }
    if (owner)
      *owner = decl_owner;
    return f->type;
  }

  void check_expr(Expr &e) {
    using K = Expr::Kind;
    switch (e.kind) {
    case K::IntLit: e.type = Type::Int(); break;
    case K::BoolLit: e.type = Type::Bool(); break;
    case K::StrLit: e.type = Type::String(); break;
    case K::Null: e.type = Type::Null(); break;
    case K::Input: e.type = Type::Int(); break;
    case K::This:
      if (current_class_.empty()) {
        error(e.span, "'this' used outside of a class");
        e.type = Type::Void();
      } else {
        e.type = Type::Class(current_class_);
      }
      break;
    case K::New:
      if (!table_.has_class(e.text)) {
        error(e.span, "unknown name '" + e.text + "'");
        e.type = Type::Void();
      } else {
        e.type = Type::Class(e.text);
      }
      break;
    case K::Var: {
      auto it = locals_.find(e.text);
      if (it == locals_.end()) {
        error(e.span, "unknown name '" + e.text + "'");
        e.type = Type::Void();
      } else {
        e.type = it->second;
      }
      break;
    }
    case K::Field:
      check_expr(*e.children[0]);
      e.type = field_type(*e.children[0], e.text, e.span, &e.resolved_owner);
      break;
    case K::Call: {
      for (auto &c : e.children)
        check_expr(*c);
      e.type = Type::Void();
      const Type &recv = e.children[0]->type;
      if (recv.kind != Type::Kind::Class) {
        if (recv.kind != Type::Kind::Void)
          error(e.span, "type mismatch: method call on " + recv.str());
        break;
      }
      const MethodDecl *m = table_.lookup_method(recv.cls, e.text, &e.resolved_owner);
      if (!m) {
        error(e.span, "unknown name '" + recv.cls + "." + e.text + "'");
        break;
      }
      if (m->params.size() + 1 != e.children.size()) {
        error(e.span, "type mismatch: '" + e.text + "' expects " +
                          std::to_string(m->params.size()) + " argument(s)");
      } else {
        for (std::size_t i = 0; i < m->params.size(); ++i)
          expect(m->params[i].type, *e.children[i + 1], "argument");
      }
      e.type = m->ret;
      break;
    }
    case K::Unary: {
      check_expr(*e.children[0]);
      Type want = e.op == BinOp::Not ? Type::Bool() : Type::Int();
      expect(want, *e.children[0], "operand");
      e.type = want;
      break;
    }
    case K::Binary: {
      Expr &l = *e.children[0];
      Expr &r = *e.children[1];
      check_expr(l);
      check_expr(r);
      switch (e.op) {
      case BinOp::Add:
        if (l.type.kind == Type::Kind::String || r.type.kind == Type::Kind::String) {
          expect(Type::String(), l, "operand");
          expect(Type::String(), r, "operand");
          e.type = Type::String();
          break;
        }
        [[fallthrough]];
      case BinOp::Sub:
      case BinOp::Mul:
      case BinOp::Div:
      case BinOp::Mod:
        expect(Type::Int(), l, "operand");
        expect(Type::Int(), r, "operand");
        e.type = Type::Int();
        break;
      case BinOp::Lt:
      case BinOp::Le:
      case BinOp::Gt:
      case BinOp::Ge:
        expect(Type::Int(), l, "operand");
        expect(Type::Int(), r, "operand");
        e.type = Type::Bool();
        break;
      case BinOp::And:
      case BinOp::Or:
        expect(Type::Bool(), l, "operand");
        expect(Type::Bool(), r, "operand");
        e.type = Type::Bool();
        break;
      case BinOp::Eq:
      case BinOp::Ne: {
        bool ok = (table_.assignable(l.type, r.type) || table_.assignable(r.type, l.type)) &&
                  !(l.type.kind == Type::Kind::Null && r.type.kind == Type::Kind::Null);
        if (!ok && l.type.kind != Type::Kind::Void && r.type.kind != Type::Kind::Void)
          error(e.span, "type mismatch: cannot compare " + l.type.str() + " with " + r.type.str());
        e.type = Type::Bool();
        break;
      }
      default:
        break;
      }
      break;
    }
    }
  }
};

} // namespace

void resolve_and_check(Ast &ast) { Checker(ast).run(); }

} // namespace mol::lang
