#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mol/lang/ast.hpp"

namespace mol::lang {

enum class Op {
  ConstAssign,
  Copy,
  Binop,
  FieldRead,
  FieldWrite,
  New,
  Call,
  Print,
  Input,
  IfGoto, // jumps to `target` when the condition is false, falls through otherwise
  Goto,
  Return,
  Nop
};

const char *op_name(Op op);

struct NullValue {
  bool operator==(const NullValue &) const = default;
};
using Literal = std::variant<NullValue, std::int64_t, bool, std::string>;

std::string literal_text(const Literal &lit);

/// Three-address statement. Operand layout in `uses` by op:
///   Copy [src]  Binop [a, b] or [a] for ! and unary -  FieldRead [base]
///   FieldWrite [base, src]  Call [receiver, args...]  Print [src]
///   IfGoto [cond]  Return [src] or []
struct IrStmt {
  Op op = Op::Nop;
  std::string dst;
  std::vector<std::string> uses;
  BinOp bop = BinOp::Add;
  Literal lit;
  std::string field_owner; // declaring class of the accessed field
  std::string field;
  std::string cls;          // New: allocated class; Call: static receiver class
  std::string method;       // Call: method name
  std::string callee_owner; // Call: class declaring the statically resolved target
  std::string key;          // Input
  int target = -1;
  Span span;
  bool removed = false; // deleted by specialization; behaves as nop
};

struct StmtRef {
  int method = -1;
  int index = -1;
  auto operator<=>(const StmtRef &) const = default;
};

/// Structured view of a method body recorded during lowering; lets the
/// reconstructor re-emit if/while nesting from the flat statement list.
struct Region {
  enum class Kind { Simple, If, While };
  Kind kind = Kind::Simple;
  int stmt = -1;        // Simple: the statement; If/While: the predicate
  int cond_begin = 0;   // While: header statements computing the condition
  int cond_end = 0;
  int jump = -1;        // If with else: goto closing the then-arm; While: back edge
  bool has_else = false;
  std::vector<Region> then_body;
  std::vector<Region> else_body;
};

struct Var {
  std::string name;
  Type type;
};

struct MethodIR {
  std::string owner;
  std::string name;
  Type ret;
  std::vector<Var> params;
  std::vector<Var> locals; // declared locals and temporaries, in order of first definition
  std::vector<IrStmt> stmts;
  std::vector<Region> body;
  Span span;
  bool is_entry = false;

  std::string qualified() const { return owner + "." + name; }
  std::optional<Type> type_of(const std::string &var) const;
  bool returns_value() const { return ret.kind != Type::Kind::Void; }
  int param_index(const std::string &var) const;
};

struct FieldIR {
  std::string name;
  Type type;
};

struct ClassIR {
  std::string name;
  std::optional<std::string> super;
  std::vector<FieldIR> fields;
  std::vector<int> methods;
};

struct ProgramIR {
  std::string source;
  std::vector<ClassIR> classes;
  std::vector<MethodIR> methods;
  int entry = -1;

  const ClassIR *find_class(const std::string &name) const;
  int find_method(const std::string &owner, const std::string &name) const;
  int find_method(const std::string &qualified) const;
  /// Method run when `name` is invoked on an object of runtime class `cls`.
  int dispatch(const std::string &cls, const std::string &name) const;
  std::optional<std::string> field_owner(const std::string &cls, const std::string &field) const;
  const FieldIR *find_field(const std::string &owner, const std::string &field) const;
  bool is_subclass(const std::string &sub, const std::string &super) const;
  /// `cls` and all of its transitive subclasses, in declaration order.
  std::vector<std::string> cone(const std::string &cls) const;

  const IrStmt &stmt(StmtRef r) const { return methods[r.method].stmts[r.index]; }
  std::string stmt_id(StmtRef r) const;
  std::optional<StmtRef> parse_stmt_id(const std::string &id) const;
  std::vector<StmtRef> all_stmts() const;
  std::size_t stmt_count() const;
};

/// Variables read by a statement, in operand order, deduplicated.
std::vector<std::string> used_vars(const IrStmt &s);
/// Variable written by a statement, or empty.
const std::string &defined_var(const IrStmt &s);

} // namespace mol::lang

namespace mol::lang {

/// Evaluates a binary/unary operator over scalar literals with wrapping
/// 64-bit integer arithmetic. Returns nullopt for division or modulo by zero
/// and for operand kinds the operator does not accept.
std::optional<Literal> fold_binop(BinOp op, const Literal &a, const Literal *b);

} // namespace mol::lang
