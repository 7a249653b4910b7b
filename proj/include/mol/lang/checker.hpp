#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mol/lang/ast.hpp"

namespace mol::lang {

/// Name-level view of the class declarations of an Ast.
class ClassTable {
public:
  explicit ClassTable(const Ast &ast);

  bool has_class(const std::string &name) const { return classes_.count(name) != 0; }
  const ClassDecl *find(const std::string &name) const;
  std::optional<std::string> super_of(const std::string &name) const;

  /// Walks the superclass chain; returns the declaring class and field.
  const FieldDecl *lookup_field(const std::string &cls, const std::string &field,
                                std::string *owner = nullptr) const;
  const MethodDecl *lookup_method(const std::string &cls, const std::string &method,
                                  std::string *owner = nullptr) const;

  bool is_subclass(const std::string &sub, const std::string &super) const;
  bool assignable(const Type &to, const Type &from) const;

private:
  std::map<std::string, const ClassDecl *> classes_;
};

/// Resolves names, types every expression, validates inheritance and
/// overriding. Annotates `ast` in place; throws CompileError listing every
/// problem found.
void resolve_and_check(Ast &ast);

} // namespace mol::lang
