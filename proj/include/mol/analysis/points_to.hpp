#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mol/lang/ir.hpp"

namespace mol::analysis {

enum class CallGraphMode { Cha, PointsTo };

const char *mode_name(CallGraphMode mode);

using SiteSet = std::set<lang::StmtRef>;

/// Allocation-site points-to sets: flow- and context-insensitive, fields
/// keyed by their declaring class (`Owner.f`).
struct PointsToResult {
  CallGraphMode mode = CallGraphMode::PointsTo;
  std::map<std::pair<int, std::string>, SiteSet> vars;
  std::map<std::string, SiteSet> fields;
  std::map<int, SiteSet> returns;
  /// Targets discovered while solving, per call site.
  std::map<lang::StmtRef, std::set<int>> call_targets;
  std::set<int> reachable;

  const SiteSet &of(int method, const std::string &var) const;
  const SiteSet &of_field(const std::string &key) const;
};

/// Whole-program inclusion-based solver. In PointsTo mode call targets are
/// discovered on the fly from receiver sets; in Cha mode parameters and
/// returns flow along class-hierarchy targets.
PointsToResult points_to(const lang::ProgramIR &ir,
                         CallGraphMode mode = CallGraphMode::PointsTo);

struct CallGraph {
  CallGraphMode mode = CallGraphMode::PointsTo;
  /// Every analysed call site; an empty set marks an unresolved site.
  std::map<lang::StmtRef, std::set<int>> targets;
  std::set<int> reachable;

  std::vector<lang::StmtRef> unresolved() const;
  std::set<std::pair<lang::StmtRef, int>> edges() const;
  std::vector<lang::StmtRef> callers_of(int method) const;
  /// Methods reachable from `from` (including itself).
  std::set<int> reach(int from) const;
};

/// Targets of a virtual call by class-hierarchy analysis over the static receiver cone.
std::set<int> cha_targets(const lang::ProgramIR &ir, const lang::IrStmt &call);

/// Cha mode resolves every call site of every method; PointsTo mode uses
/// `pts` (which must be computed in PointsTo mode) for sites in reachable methods.
CallGraph call_graph(const lang::ProgramIR &ir, CallGraphMode mode, const PointsToResult *pts = nullptr);

} // namespace mol::analysis
