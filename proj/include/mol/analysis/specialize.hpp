#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mol/lang/ir.hpp"

namespace mol::analysis {

struct Specialization {
  lang::ProgramIR ir;
  std::vector<std::string> warnings;
};

/// Binds `input(k)` reads to constants, runs conditional constant propagation
/// over int/bool locals of every method reachable from `entry`'s program, folds
/// decided `if` predicates and marks unreachable statements removed.
/// Statement ids are preserved.
Specialization specialize(const lang::ProgramIR &ir, int entry,
                          const std::map<std::string, std::int64_t> &bindings);

} // namespace mol::analysis
