#pragma once

#include <string>
#include <vector>

#include "mol/analysis/points_to.hpp"

namespace mol::analysis {

struct FieldDep {
  lang::StmtRef read;
  lang::StmtRef write;
  std::string field; // Owner.f

  auto operator<=>(const FieldDep &) const = default;
};

/// Heap dependences from field writes to field reads: same field name,
/// intersecting base points-to sets, and the write may reach the read in the
/// call graph (reader reachable from the writer, or both from a common caller).
std::vector<FieldDep> field_data_deps(const lang::ProgramIR &ir, const CallGraph &cg,
                                      const PointsToResult &pts);

} // namespace mol::analysis
