#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mol/lang/ir.hpp"

namespace mol::lang {

struct Reconstruction {
  std::string source;
  /// Statements actually emitted: the executability closure of the keep set.
  std::set<StmtRef> emitted;
  /// For each 1-based source line, the original statements emitted on it in
  /// lowering order (index 0 unused).
  std::vector<std::vector<StmtRef>> line_origins;
};

/// Emits runnable MOL source containing the executability closure of `keep`.
/// Throws AnalysisError("empty slice") when `keep` is empty.
Reconstruction reconstruct_source(const ProgramIR &ir, const std::set<StmtRef> &keep);

/// Maps original statement refs to statements of `rebuilt`, the lowering of
/// `rec.source`. Only data statements (not goto/nop) are mapped.
std::map<StmtRef, StmtRef> map_to_rebuilt(const ProgramIR &rebuilt, const Reconstruction &rec);

} // namespace mol::lang
