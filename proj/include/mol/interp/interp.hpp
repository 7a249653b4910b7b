#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mol/lang/ir.hpp"
#include "mol/slicing/criterion.hpp"

namespace mol::interp {

struct RunInput {
  std::map<std::string, std::int64_t> bindings; // missing keys read as 0
  std::uint64_t step_limit = 1'000'000;
};

enum class RunStatus { Ok, RuntimeError, StepLimit };

const char *status_name(RunStatus s);

struct Trace {
  RunStatus status = RunStatus::Ok;
  std::string error;
  std::vector<std::string> output;
  std::map<slicing::CriterionPoint, std::vector<std::string>> criterion_values;
  std::uint64_t steps = 0;
  /// (call site, method actually invoked) pairs seen during the run.
  std::set<std::pair<lang::StmtRef, int>> dispatches;
};

/// Executes from the entry method. Statements marked removed behave as nops.
/// Values recorded for `watch` are taken when the statement completes (for a
/// call, after it returns); objects are rendered as `<Class>`.
Trace run(const lang::ProgramIR &ir, const RunInput &input,
          const std::set<slicing::CriterionPoint> &watch = {});

Trace trace_criterion(const lang::ProgramIR &ir, const slicing::SlicingCriterion &c, const RunInput &input);

} // namespace mol::interp
