#pragma once

#include <set>
#include <string>
#include <vector>

#include "mol/analysis/cfg.hpp"
#include "mol/analysis/dataflow.hpp"
#include "mol/slicing/sdg.hpp"

namespace moltest {

/// Control dependence straight from the path definition: n depends on p iff
/// some path p -> s ... -> n has every node after p post-dominated by n, and n
/// does not strictly post-dominate p. Post-dominance is decided by removing a
/// node and testing whether exit is still reachable. The entry node gets a
/// virtual edge to exit and is reported as kEntry. A statement governed by no
/// predicate (only possible when unreachable) depends on kEntry.
std::vector<std::vector<int>> path_control_dependences(const mol::analysis::Cfg &cfg);

/// Reaching definitions by round-robin iteration over explicit def sets.
std::vector<mol::analysis::DataDep> naive_reaching_defs(const mol::analysis::Cfg &cfg,
                                                        const mol::lang::MethodIR &method);

/// Summary edges by repeated forward reachability from every formal-in over
/// same-level edges, until no new summary appears. `sdg` must not contain
/// summary edges yet.
std::set<std::pair<int, int>> brute_force_summaries(const mol::slicing::Sdg &sdg);

} // namespace moltest
