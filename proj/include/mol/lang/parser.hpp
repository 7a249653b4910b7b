#pragma once

#include <string>

#include "mol/lang/ast.hpp"

namespace mol::lang {

/// Parses MOL source text. Throws CompileError on the first syntax error or on
/// duplicate class/field/method/parameter declarations.
Ast parse(std::string source);

} // namespace mol::lang
