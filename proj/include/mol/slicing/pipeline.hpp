#pragma once

#include <vector>

#include "mol/analysis/cfg.hpp"
#include "mol/analysis/dataflow.hpp"
#include "mol/analysis/field_deps.hpp"
#include "mol/analysis/points_to.hpp"
#include "mol/lang/ir.hpp"

namespace mol::slicing {

/// Every whole-program and per-method analysis the SDG is built from, all
/// computed under one call-graph mode.
struct Analyses {
  lang::ProgramIR ir;
  analysis::CallGraphMode mode = analysis::CallGraphMode::PointsTo;
  analysis::PointsToResult pts;
  analysis::CallGraph cg;
  std::vector<analysis::Cfg> cfgs;
  std::vector<std::vector<std::vector<int>>> control; // per method, per statement
  std::vector<std::vector<analysis::DataDep>> data;   // per method
  std::vector<analysis::FieldDep> fields;
};

Analyses analyze(lang::ProgramIR ir, analysis::CallGraphMode mode);

} // namespace mol::slicing
