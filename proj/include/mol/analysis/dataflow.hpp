#pragma once

#include <string>
#include <vector>

#include "mol/analysis/cfg.hpp"

namespace mol::analysis {

/// `def` is a statement index, or kEntry when the reaching value is the
/// incoming parameter.
struct DataDep {
  int use = 0;
  int def = 0;
  std::string var;

  auto operator<=>(const DataDep &) const = default;
};

/// Def-use pairs over locals, temporaries and parameters; sorted.
std::vector<DataDep> reaching_defs(const Cfg &cfg, const lang::MethodIR &method);

} // namespace mol::analysis
