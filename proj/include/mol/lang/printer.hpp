#pragma once

#include <string>

#include "mol/lang/ir.hpp"

namespace mol::lang {

/// MOL surface syntax for one IR statement (without trailing `;`).
/// Control-transfer statements render in listing syntax (`iffalse c goto k`).
std::string stmt_text(const IrStmt &s);

/// Canonical, deterministic listing of the whole program, one statement per line.
std::string pretty_print(const ProgramIR &ir);

} // namespace mol::lang
