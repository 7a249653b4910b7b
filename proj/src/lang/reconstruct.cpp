#include "mol/lang/reconstruct.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "mol/lang/printer.hpp"

namespace mol::lang {

namespace {

bool is_structural(const IrStmt &s) {
  return s.removed || s.op == Op::Goto || s.op == Op::Nop;
}

class Reconstructor {
public:
  Reconstructor(const ProgramIR &ir, const std::set<StmtRef> &keep) : ir_(ir) {
    for (const auto &r : keep)
      if (!ir.stmt(r).removed)
        kept_.insert(r);
    whole_ = true;
    for (const auto &r : ir.all_stmts())
      whole_ = whole_ && (ir.stmt(r).removed || kept_.count(r));
  }

  Reconstruction run() {
    for (std::size_t m = 0; m < ir_.methods.size(); ++m) {
      method_ = static_cast<int>(m);
      if (close(ir_.methods[m].body))
        keep_returns(ir_.methods[m].body);
    }
    select_members();
    emit_program();
    rec_.emitted = kept_;
    rec_.source = text_.str();
    return std::move(rec_);
  }

private:
  const ProgramIR &ir_;
  std::set<StmtRef> kept_;
  int method_ = -1;
  std::set<int> methods_;
  std::set<std::pair<std::string, std::string>> fields_;
  std::set<std::string> classes_;
  std::ostringstream text_;
  Reconstruction rec_;
  int line_ = 1;
  bool whole_ = false; // identity slice: every declaration is emitted

  bool has(int idx) const { return kept_.count({method_, idx}) != 0; }
  void add(int idx) { kept_.insert({method_, idx}); }

  bool close(const std::vector<Region> &regions) {
    bool any = false;
    for (const auto &r : regions)
      any = close(r) || any;
    return any;
  }

  // Adds enclosing predicates (and loop headers) of every kept statement.
  bool close(const Region &r) {
    switch (r.kind) {
    case Region::Kind::Simple:
      return has(r.stmt);
    case Region::Kind::If: {
      bool any = close(r.then_body);
      any = close(r.else_body) || any;
      if (any || has(r.stmt)) {
        add(r.stmt);
        return true;
      }
      return false;
    }
    case Region::Kind::While: {
      bool any = close(r.then_body) || has(r.stmt);
      for (int k = r.cond_begin; k < r.cond_end; ++k)
        any = any || has(k);
      if (!any)
        return false;
      add(r.stmt);
      if (ir_.methods[method_].stmts[r.stmt].op == Op::IfGoto)
        for (int k = r.cond_begin; k < r.cond_end; ++k)
          add(k);
      return true;
    }
    }
    return false;
  }

  // Early returns inside emitted arms stay, so the rebuilt body cannot fall through
  // into code the original never reached.
  void keep_returns(const std::vector<Region> &regions) {
    const auto &stmts = ir_.methods[method_].stmts;
    for (const auto &r : regions) {
      if (r.kind == Region::Kind::Simple) {
        if (!stmts[r.stmt].removed && stmts[r.stmt].op == Op::Return)
          add(r.stmt);
        continue;
      }
      if (!has(r.stmt))
        continue;
      Op op = stmts[r.stmt].op;
      if (op != Op::Goto)
        keep_returns(r.then_body);
      if (r.kind == Region::Kind::If && op != Op::Nop)
        keep_returns(r.else_body);
    }
  }

  void need_type(const Type &t) {
    if (t.kind == Type::Kind::Class)
      classes_.insert(t.cls);
  }

  void select_members() {
    methods_.insert(ir_.entry);
    if (whole_) {
      for (std::size_t m = 0; m < ir_.methods.size(); ++m)
        methods_.insert(static_cast<int>(m));
      for (const auto &c : ir_.classes) {
        classes_.insert(c.name);
        for (const auto &f : c.fields)
          fields_.insert({c.name, f.name});
      }
    }
    for (const auto &r : kept_) {
      methods_.insert(r.method);
      const IrStmt &s = ir_.stmt(r);
      if (s.op == Op::Call) {
        int callee = ir_.find_method(s.callee_owner, s.method);
        if (callee >= 0)
          methods_.insert(callee);
      }
      if (s.op == Op::FieldRead || s.op == Op::FieldWrite)
        fields_.insert({s.field_owner, s.field});
      if (s.op == Op::New)
        classes_.insert(s.cls);
    }
    for (;;) {
      for (int m : methods_) {
        const MethodIR &mir = ir_.methods[m];
        if (!mir.is_entry)
          classes_.insert(mir.owner);
        need_type(mir.ret);
        for (const auto &p : mir.params)
          need_type(p.type);
        for (const auto &v : used_locals(m))
          need_type(*mir.type_of(v));
      }
      for (const auto &[owner, name] : fields_) {
        classes_.insert(owner);
        if (const FieldIR *f = ir_.find_field(owner, name))
          need_type(f->type);
      }
      std::vector<std::string> work(classes_.begin(), classes_.end());
      while (!work.empty()) {
        std::string c = work.back();
        work.pop_back();
        const ClassIR *cir = ir_.find_class(c);
        if (cir && cir->super && classes_.insert(*cir->super).second)
          work.push_back(*cir->super);
      }
      if (!keep_overrides())
        break;
    }
  }

  // An override dropped from the rebuilt program would let calls dispatch to an
  // inherited body instead.
  bool keep_overrides() {
    bool changed = false;
    for (const auto &c : classes_) {
      const ClassIR *cir = ir_.find_class(c);
      if (!cir || !cir->super)
        continue;
      for (int m : cir->methods) {
        if (methods_.count(m))
          continue;
        int inherited = ir_.dispatch(*cir->super, ir_.methods[m].name);
        if (inherited >= 0 && methods_.count(inherited)) {
          methods_.insert(m);
          changed = true;
        }
      }
    }
    return changed;
  }

  std::vector<std::string> used_locals(int m) const {
    const MethodIR &mir = ir_.methods[m];
    std::set<std::string> names;
    for (const auto &r : kept_) {
      if (r.method != m)
        continue;
      const IrStmt &s = ir_.stmt(r);
      if (!s.dst.empty())
        names.insert(s.dst);
      for (const auto &u : s.uses)
        names.insert(u);
    }
    std::vector<std::string> out;
    for (const auto &l : mir.locals)
      if (names.count(l.name))
        out.push_back(l.name);
    return out;
  }

  void line(int indent, const std::string &content, std::vector<StmtRef> origins = {}) {
    text_ << std::string(static_cast<std::size_t>(indent) * 2, ' ') << content << "\n";
    if (rec_.line_origins.size() <= static_cast<std::size_t>(line_))
      rec_.line_origins.resize(static_cast<std::size_t>(line_) + 1);
    rec_.line_origins[line_] = std::move(origins);
    ++line_;
  }

  void emit_program() {
    for (const auto &c : ir_.classes) {
      if (!classes_.count(c.name))
        continue;
      line(0, "class " + c.name + (c.super ? " extends " + *c.super : "") + " {");
      for (const auto &f : c.fields)
        if (fields_.count({c.name, f.name}))
          line(1, "field " + f.type.str() + " " + f.name + ";");
      for (int m : c.methods)
        if (methods_.count(m))
          emit_method(m);
      line(0, "}");
    }
    method_ = ir_.entry;
    line(0, "main {");
    emit_body(ir_.entry, 1);
    line(0, "}");
  }

  void emit_method(int m) {
    const MethodIR &mir = ir_.methods[m];
    std::string sig = "method " + mir.ret.str() + " " + mir.name + "(";
    for (std::size_t i = 0; i < mir.params.size(); ++i)
      sig += (i ? ", " : "") + mir.params[i].type.str() + " " + mir.params[i].name;
    line(1, sig + ") {");
    method_ = m;
    emit_body(m, 2);
    line(1, "}");
  }

  void emit_body(int m, int indent) {
    const MethodIR &mir = ir_.methods[m];
    for (const auto &v : used_locals(m))
      line(indent, "var " + mir.type_of(v)->str() + " " + v + ";");
    emit_regions(mir.body, indent);
  }

  bool emits_any(const std::vector<Region> &regions) const {
    for (const auto &r : regions) {
      if (r.kind == Region::Kind::Simple) {
        if (has(r.stmt) && !is_structural(ir_.methods[method_].stmts[r.stmt]))
          return true;
      } else if (has(r.stmt)) {
        return true;
      }
    }
    return false;
  }

  void emit_regions(const std::vector<Region> &regions, int indent) {
    for (const auto &r : regions)
      emit_region(r, indent);
  }

  void emit_simple(int idx, int indent) {
    const IrStmt &s = ir_.methods[method_].stmts[idx];
    if (has(idx) && !is_structural(s))
      line(indent, stmt_text(s) + ";", {{method_, idx}});
  }

  std::string expr_of(const std::string &var, int begin, int end) const {
    const auto &stmts = ir_.methods[method_].stmts;
    int def = -1;
    for (int k = begin; k < end; ++k)
      if (stmts[k].dst == var)
        def = k;
    if (def < 0)
      return var;
    const IrStmt &s = stmts[def];
    auto sub = [&](const std::string &v) { return expr_of(v, begin, def); };
    switch (s.op) {
    case Op::ConstAssign: {
      std::string lit = literal_text(s.lit);
      return lit[0] == '-' ? "(" + lit + ")" : lit;
    }
    case Op::Copy: return sub(s.uses[0]);
    case Op::Binop:
      if (s.uses.size() == 1)
        return std::string("(") + binop_text(s.bop) + "(" + sub(s.uses[0]) + "))";
      return "(" + sub(s.uses[0]) + " " + binop_text(s.bop) + " " + sub(s.uses[1]) + ")";
    case Op::FieldRead: return sub(s.uses[0]) + "." + s.field;
    case Op::New: return "new " + s.cls;
    case Op::Input: return "input(" + literal_text(s.key) + ")";
    case Op::Call: {
      std::string out = sub(s.uses[0]) + "." + s.method + "(";
      for (std::size_t i = 1; i < s.uses.size(); ++i)
        out += (i > 1 ? ", " : "") + sub(s.uses[i]);
      return out + ")";
    }
    default: return var;
    }
  }

  void emit_region(const Region &r, int indent) {
    if (r.kind == Region::Kind::Simple) {
      emit_simple(r.stmt, indent);
      return;
    }
    if (!has(r.stmt))
      return;
    const IrStmt &pred = ir_.methods[method_].stmts[r.stmt];
    if (r.kind == Region::Kind::If) {
      if (pred.op == Op::Nop) {
        emit_regions(r.then_body, indent);
      } else if (pred.op == Op::Goto) {
        emit_regions(r.else_body, indent);
      } else {
        line(indent, "if (" + pred.uses[0] + ") {", {{method_, r.stmt}});
        emit_regions(r.then_body, indent + 1);
        if (r.has_else && emits_any(r.else_body)) {
          line(indent, "} else {");
          emit_regions(r.else_body, indent + 1);
        }
        line(indent, "}");
      }
      return;
    }
    if (pred.op != Op::IfGoto) {
      for (int k = r.cond_begin; k < r.cond_end; ++k)
        emit_simple(k, indent);
      return;
    }
    std::vector<StmtRef> origins;
    for (int k = r.cond_begin; k < r.cond_end; ++k)
      origins.push_back({method_, k});
    origins.push_back({method_, r.stmt});
    line(indent, "while (" + expr_of(pred.uses[0], r.cond_begin, r.cond_end) + ") {",
         std::move(origins));
    emit_regions(r.then_body, indent + 1);
    line(indent, "}");
  }
};

} // namespace

Reconstruction reconstruct_source(const ProgramIR &ir, const std::set<StmtRef> &keep) {
  if (keep.empty())
    throw AnalysisError("empty slice");
  return Reconstructor(ir, keep).run();
}

std::map<StmtRef, StmtRef> map_to_rebuilt(const ProgramIR &rebuilt, const Reconstruction &rec) {
  std::map<StmtRef, StmtRef> out;
  std::map<int, std::vector<StmtRef>> by_line;
  for (const auto &r : rebuilt.all_stmts()) {
    const IrStmt &s = rebuilt.stmt(r);
    if (is_structural(s))
      continue;
    by_line[position_of(rebuilt.source, s.span.begin).line].push_back(r);
  }
  for (const auto &[ln, refs] : by_line) {
    if (static_cast<std::size_t>(ln) >= rec.line_origins.size())
      continue;
    const auto &orig = rec.line_origins[ln];
    for (std::size_t i = 0; i < refs.size() && i < orig.size(); ++i)
      out[orig[i]] = refs[i];
  }
  return out;
}

} // namespace mol::lang
