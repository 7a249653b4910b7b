#include "mol/lang/ir.hpp"

#include <algorithm>
#include <set>

namespace mol::lang {

const char *op_name(Op op) {
  switch (op) {
  case Op::ConstAssign: return "const-assign";
  case Op::Copy: return "copy";
  case Op::Binop: return "binop";
  case Op::FieldRead: return "field-read";
  case Op::FieldWrite: return "field-write";
  case Op::New: return "new";
  case Op::Call: return "virtual-call";
  case Op::Print: return "print";
  case Op::Input: return "input-read";
  case Op::IfGoto: return "if-goto";
  case Op::Goto: return "goto";
  case Op::Return: return "return";
  case Op::Nop: return "nop";
  }
  return "?";
}

std::string literal_text(const Literal &lit) {
  if (std::holds_alternative<NullValue>(lit))
    return "null";
  if (auto *i = std::get_if<std::int64_t>(&lit))
    return std::to_string(*i);
  if (auto *b = std::get_if<bool>(&lit))
    return *b ? "true" : "false";
  std::string out = "\"";
  for (char c : std::get<std::string>(lit)) {
    switch (c) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    default: out += c;
    }
  }
  return out + "\"";
}

std::optional<Type> MethodIR::type_of(const std::string &var) const {
  if (var == "this" && !is_entry)
    return Type::Class(owner);
  for (const auto &p : params)
    if (p.name == var)
      return p.type;
  for (const auto &l : locals)
    if (l.name == var)
      return l.type;
  return std::nullopt;
}

int MethodIR::param_index(const std::string &var) const {
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i].name == var)
      return static_cast<int>(i);
  return -1;
}

const ClassIR *ProgramIR::find_class(const std::string &name) const {
  for (const auto &c : classes)
    if (c.name == name)
      return &c;
  return nullptr;
}

int ProgramIR::find_method(const std::string &owner, const std::string &name) const {
  for (std::size_t i = 0; i < methods.size(); ++i)
    if (methods[i].owner == owner && methods[i].name == name)
      return static_cast<int>(i);
  return -1;
}

int ProgramIR::find_method(const std::string &qualified) const {
  auto dot = qualified.find('.');
  if (dot == std::string::npos)
    return -1;
  return find_method(qualified.substr(0, dot), qualified.substr(dot + 1));
}

int ProgramIR::dispatch(const std::string &cls, const std::string &name) const {
  std::set<std::string> seen;
  for (const ClassIR *c = find_class(cls); c && seen.insert(c->name).second;
       c = c->super ? find_class(*c->super) : nullptr) {
    int m = find_method(c->name, name);
    if (m >= 0)
      return m;
  }
  return -1;
}

std::optional<std::string> ProgramIR::field_owner(const std::string &cls,
                                                  const std::string &field) const {
  std::set<std::string> seen;
  for (const ClassIR *c = find_class(cls); c && seen.insert(c->name).second;
       c = c->super ? find_class(*c->super) : nullptr) {
    for (const auto &f : c->fields)
      if (f.name == field)
        return c->name;
  }
  return std::nullopt;
}

const FieldIR *ProgramIR::find_field(const std::string &owner, const std::string &field) const {
  const ClassIR *c = find_class(owner);
  if (!c)
    return nullptr;
  for (const auto &f : c->fields)
    if (f.name == field)
      return &f;
  return nullptr;
}

bool ProgramIR::is_subclass(const std::string &sub, const std::string &super) const {
  std::set<std::string> seen;
  for (const ClassIR *c = find_class(sub); c && seen.insert(c->name).second;
       c = c->super ? find_class(*c->super) : nullptr)
    if (c->name == super)
      return true;
  return false;
}

std::vector<std::string> ProgramIR::cone(const std::string &cls) const {
  std::vector<std::string> out;
  for (const auto &c : classes)
    if (is_subclass(c.name, cls))
      out.push_back(c.name);
  return out;
}

std::string ProgramIR::stmt_id(StmtRef r) const {
  return methods[r.method].qualified() + "#" + std::to_string(r.index);
}

std::optional<StmtRef> ProgramIR::parse_stmt_id(const std::string &id) const {
  auto hash = id.rfind('#');
  if (hash == std::string::npos)
    return std::nullopt;
  int m = find_method(id.substr(0, hash));
  if (m < 0)
    return std::nullopt;
  std::string num = id.substr(hash + 1);
  if (num.empty() || num.size() > 9 || !std::all_of(num.begin(), num.end(), ::isdigit))
    return std::nullopt;
  int k = std::stoi(num);
  if (k >= static_cast<int>(methods[m].stmts.size()))
    return std::nullopt;
  return StmtRef{m, k};
}

std::vector<StmtRef> ProgramIR::all_stmts() const {
  std::vector<StmtRef> out;
  for (std::size_t m = 0; m < methods.size(); ++m)
    for (std::size_t k = 0; k < methods[m].stmts.size(); ++k)
      out.push_back({static_cast<int>(m), static_cast<int>(k)});
  return out;
}

std::size_t ProgramIR::stmt_count() const {
  std::size_t n = 0;
  for (const auto &m : methods)
    n += m.stmts.size();
  return n;
}

std::vector<std::string> used_vars(const IrStmt &s) {
  std::vector<std::string> out;
  if (s.removed)
    return out;
  for (const auto &u : s.uses)
    if (std::find(out.begin(), out.end(), u) == out.end())
      out.push_back(u);
  return out;
}

const std::string &defined_var(const IrStmt &s) {
  static const std::string none;
  return s.removed ? none : s.dst;
}

} // namespace mol::lang

namespace mol::lang {

std::optional<Literal> fold_binop(BinOp op, const Literal &a, const Literal *b) {
  auto wrap = [](std::uint64_t v) { return static_cast<std::int64_t>(v); };
  if (op == BinOp::Not) {
    if (auto *x = std::get_if<bool>(&a))
      return Literal{!*x};
    return std::nullopt;
  }
  if (op == BinOp::Neg) {
    if (auto *x = std::get_if<std::int64_t>(&a))
      return Literal{wrap(0 - static_cast<std::uint64_t>(*x))};
    return std::nullopt;
  }
  if (!b)
    return std::nullopt;
  if (op == BinOp::Eq || op == BinOp::Ne) {
    if (a.index() != b->index())
      return std::nullopt;
    bool eq = a == *b;
    return Literal{op == BinOp::Eq ? eq : !eq};
  }
  if (auto *x = std::get_if<std::string>(&a)) {
    auto *y = std::get_if<std::string>(b);
    if (op == BinOp::Add && y)
      return Literal{*x + *y};
    return std::nullopt;
  }
  if (auto *x = std::get_if<bool>(&a)) {
    auto *y = std::get_if<bool>(b);
    if (!y)
      return std::nullopt;
    if (op == BinOp::And)
      return Literal{*x && *y};
    if (op == BinOp::Or)
      return Literal{*x || *y};
    return std::nullopt;
  }
  auto *x = std::get_if<std::int64_t>(&a);
  auto *y = std::get_if<std::int64_t>(b);
  if (!x || !y)
    return std::nullopt;
  std::uint64_t ux = static_cast<std::uint64_t>(*x), uy = static_cast<std::uint64_t>(*y);
  switch (op) {
  case BinOp::Add: return Literal{wrap(ux + uy)};
  case BinOp::Sub: return Literal{wrap(ux - uy)};
  case BinOp::Mul: return Literal{wrap(ux * uy)};
  case BinOp::Div:
    if (*y == 0)
      return std::nullopt;
    if (*x == INT64_MIN && *y == -1)
      return Literal{*x};
    return Literal{*x / *y};
  case BinOp::Mod:
    if (*y == 0)
      return std::nullopt;
    if (*y == -1)
      return Literal{std::int64_t{0}};
    return Literal{*x % *y};
  case BinOp::Lt: return Literal{*x < *y};
  case BinOp::Le: return Literal{*x <= *y};
  case BinOp::Gt: return Literal{*x > *y};
  case BinOp::Ge: return Literal{*x >= *y};
  default: return std::nullopt;
  }
}

} // namespace mol::lang
