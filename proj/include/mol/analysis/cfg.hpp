#pragma once

#include <vector>

#include "mol/lang/ir.hpp"

namespace mol::analysis {

/// Intraprocedural CFG. Nodes 0..n-1 are statement indices, n is the
/// synthetic entry and n+1 the synthetic exit.
struct Cfg {
  int method = -1;
  int stmt_count = 0;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;
  /// Edges added so that every node reaches exit (non-terminating regions).
  std::vector<std::pair<int, int>> augmented;

  int entry() const { return stmt_count; }
  int exit() const { return stmt_count + 1; }
  int node_count() const { return stmt_count + 2; }
};

Cfg build_cfg(const lang::MethodIR &method, int method_index);

/// Immediate post-dominator of every node; -1 for exit.
std::vector<int> post_dominators(const Cfg &cfg);

/// Marker used in control-dependence lists for the method entry.
inline constexpr int kEntry = -1;

/// For each statement index, the sorted list of predicates it is control
/// dependent on (statement indices, or kEntry). The entry behaves as a
/// predicate whose second branch goes straight to exit.
std::vector<std::vector<int>> control_dependences(const Cfg &cfg, const std::vector<int> &ipdom);

} // namespace mol::analysis
