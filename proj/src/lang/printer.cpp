#include "mol/lang/printer.hpp"

#include <sstream>

namespace mol::lang {

namespace {

std::string call_text(const IrStmt &s) {
  std::string out = s.uses[0] + "." + s.method + "(";
  for (std::size_t i = 1; i < s.uses.size(); ++i) {
    if (i > 1)
      out += ", ";
    out += s.uses[i];
  }
  return out + ")";
}

} // namespace

std::string stmt_text(const IrStmt &s) {
  if (s.removed)
    return "nop";
  switch (s.op) {
  case Op::ConstAssign: return s.dst + " = " + literal_text(s.lit);
  case Op::Copy: return s.dst + " = " + s.uses[0];
  case Op::Binop:
    if (s.uses.size() == 1)
      return s.dst + " = " + binop_text(s.bop) + s.uses[0];
    return s.dst + " = " + s.uses[0] + " " + binop_text(s.bop) + " " + s.uses[1];
  case Op::FieldRead: return s.dst + " = " + s.uses[0] + "." + s.field;
  case Op::FieldWrite: return s.uses[0] + "." + s.field + " = " + s.uses[1];
  case Op::New: return s.dst + " = new " + s.cls;
  case Op::Call: return s.dst.empty() ? call_text(s) : s.dst + " = " + call_text(s);
  case Op::Print: return "print(" + s.uses[0] + ")";
  case Op::Input: return s.dst + " = input(" + literal_text(s.key) + ")";
  case Op::IfGoto: return "iffalse " + s.uses[0] + " goto " + std::to_string(s.target);
  case Op::Goto: return "goto " + std::to_string(s.target);
  case Op::Return: return s.uses.empty() ? "return" : "return " + s.uses[0];
  case Op::Nop: return "nop";
  }
  return "?";
}

std::string pretty_print(const ProgramIR &ir) {
  std::ostringstream out;
  out << "program " << ir.classes.size() << " classes " << ir.methods.size() << " methods\n";
  auto method = [&](int idx) {
    const MethodIR &m = ir.methods[idx];
    out << "method " << m.ret.str() << " " << m.qualified() << "(";
    for (std::size_t i = 0; i < m.params.size(); ++i)
      out << (i ? ", " : "") << m.params[i].type.str() << " " << m.params[i].name;
    out << ")\n";
    for (const auto &l : m.locals)
      out << "  local " << l.type.str() << " " << l.name << "\n";
    for (std::size_t k = 0; k < m.stmts.size(); ++k)
      out << "  " << m.qualified() << "#" << k << ": " << stmt_text(m.stmts[k]) << "\n";
  };
  for (const auto &c : ir.classes) {
    out << "class " << c.name;
    if (c.super)
      out << " extends " << *c.super;
    out << "\n";
    for (const auto &f : c.fields)
      out << "  field " << f.type.str() << " " << f.name << "\n";
    for (int m : c.methods)
      method(m);
  }
  if (ir.entry >= 0)
    method(ir.entry);
  return out.str();
}

} // namespace mol::lang
