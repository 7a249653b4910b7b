#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mol/lang/source.hpp"

namespace mol::lang {

struct Type {
  enum class Kind { Int, Bool, String, Null, Class, Void };
  Kind kind = Kind::Void;
  std::string cls; // only for Kind::Class

  static Type Int() { return {Kind::Int, {}}; }
  static Type Bool() { return {Kind::Bool, {}}; }
  static Type String() { return {Kind::String, {}}; }
  static Type Null() { return {Kind::Null, {}}; }
  static Type Void() { return {Kind::Void, {}}; }
  static Type Class(std::string name) { return {Kind::Class, std::move(name)}; }

  bool is_ref() const { return kind == Kind::Class || kind == Kind::Null; }
  std::string str() const;
  bool operator==(const Type &) const = default;
};

enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Not, Neg };

const char *binop_text(BinOp op);
bool is_unary(BinOp op);

struct Expr {
  enum class Kind { IntLit, BoolLit, StrLit, Null, This, New, Input, Var, Field, Call, Binary, Unary };
  Kind kind;
  Span span;
  std::int64_t int_value = 0;
  bool bool_value = false;
  std::string text; // string literal, input key, variable, field, method or class name
  BinOp op = BinOp::Add;
  std::vector<std::unique_ptr<Expr>> children; // Field/Call: [object, args...]

  // Filled by the checker.
  Type type;
  std::string resolved_owner; // Field: declaring class; Call: class declaring the static target
};

using ExprPtr = std::unique_ptr<Expr>;

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

struct Stmt {
  enum class Kind { VarDecl, Assign, FieldAssign, If, While, Return, Print, ExprStmt };
  Kind kind;
  Span span;
  std::string name;   // VarDecl / Assign target, FieldAssign field
  Type decl_type;     // VarDecl
  ExprPtr target;     // FieldAssign object expression
  ExprPtr value;      // initializer / rhs / condition / returned / printed / call
  Block then_body;
  Block else_body;
  bool has_else = false;
  Span else_span;     // position of the `else` keyword
};

struct Param {
  Type type;
  std::string name;
  Span span;
};

struct FieldDecl {
  Type type;
  std::string name;
  Span span;
};

struct MethodDecl {
  Type ret;
  std::string name;
  std::vector<Param> params;
  Block body;
  Span span;
  Span body_span;
};

struct ClassDecl {
  std::string name;
  std::optional<std::string> super;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  Span span;
};

struct Ast {
  std::string source;
  std::vector<ClassDecl> classes;
  Block main_block;
  Span main_span;
  Span main_body_span;
};

} // namespace mol::lang
