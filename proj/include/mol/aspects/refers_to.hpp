#pragma once

#include <set>
#include <string>
#include <utility>

#include "mol/analysis/points_to.hpp"
#include "mol/lang/ir.hpp"

namespace mol::aspects {

/// Methods (`Owner.m`, including `Main.main`) refer to the fields they read or
/// write and to the methods they may call.
struct RefersToGraph {
  std::set<std::string> functions;
  std::set<std::string> attributes;
  std::set<std::pair<std::string, std::string>> edges;

  std::set<std::string> targets_of(const std::string &f) const;
  bool contains(const std::string &member) const {
    return functions.count(member) || attributes.count(member);
  }
};

/// Call sites absent from `cg` (methods it never reached) fall back to
/// class-hierarchy targets.
RefersToGraph build_refers_to(const lang::ProgramIR &ir, const analysis::CallGraph &cg);

/// Least superset of `roots` closed under refers-to edges. Throws on unknown roots.
std::set<std::string> refers_to_closure(const RefersToGraph &g, const std::set<std::string> &roots);

} // namespace mol::aspects
