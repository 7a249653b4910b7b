#pragma once

#include <set>
#include <string>

#include "mol/lang/ir.hpp"
#include "mol/slicing/pipeline.hpp"

namespace mol::slicing {

enum class Direction { Backward, Forward };

const char *direction_name(Direction d);

/// A statement paired with the variable (or, for field accesses, the field
/// name) designated there.
struct CriterionPoint {
  lang::StmtRef stmt;
  std::string var;
  bool field = false;
  auto operator<=>(const CriterionPoint &) const = default;
};

struct SlicingCriterion {
  Direction direction = Direction::Backward;
  std::set<CriterionPoint> points;
  std::string origin;
};

/// Parses and resolves `C.m:<k>#v`, `C.m:ret` or `C.f@writes`.
/// Throws AnalysisError on malformed text or unresolvable members.
SlicingCriterion resolve_criterion(const std::string &text, const Analyses &a,
                                   Direction dir = Direction::Backward);

} // namespace mol::slicing
