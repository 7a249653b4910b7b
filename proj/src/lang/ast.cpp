#include "mol/lang/ast.hpp"

namespace mol::lang {

std::string Type::str() const {
  switch (kind) {
  case Kind::Int: return "int";
  case Kind::Bool: return "bool";
  case Kind::String: return "string";
  case Kind::Null: return "null";
  case Kind::Class: return cls;
  case Kind::Void: return "void";
  }
  return "?";
}

const char *binop_text(BinOp op) {
  switch (op) {
  case BinOp::Add: return "+";
  case BinOp::Sub: return "-";
  case BinOp::Mul: return "*";
  case BinOp::Div: return "/";
  case BinOp::Mod: return "%";
  case BinOp::Eq: return "==";
  case BinOp::Ne: return "!=";
  case BinOp::Lt: return "<";
  case BinOp::Le: return "<=";
  case BinOp::Gt: return ">";
  case BinOp::Ge: return ">=";
  case BinOp::And: return "&&";
  case BinOp::Or: return "||";
  case BinOp::Not: return "!";
  case BinOp::Neg: return "-";
  }
  return "?";
}

bool is_unary(BinOp op) { return op == BinOp::Not || op == BinOp::Neg; }

} // namespace mol::lang
