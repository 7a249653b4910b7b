#pragma once

#include <string>

#include "mol/lang/ast.hpp"
#include "mol/lang/ir.hpp"

namespace mol::lang {

/// Lowers a checked Ast into three-address form. The main block becomes the
/// synthetic entry method `Main.main`.
ProgramIR lower(const Ast &ast);

/// parse + resolve_and_check + lower.
ProgramIR compile(std::string source);

} // namespace mol::lang
