#pragma once

#include <set>
#include <string>
#include <vector>

#include "mol/slicing/criterion.hpp"
#include "mol/slicing/sdg.hpp"

namespace mol::slicing {

struct SliceResult {
  SlicingCriterion criterion;
  std::set<lang::StmtRef> statements;
  std::set<int> nodes;
};

struct SliceMembers {
  std::set<std::string> classes; // synthetic Main excluded
  std::set<std::string> methods; // Owner.m
  std::set<std::string> fields;  // DeclaringOwner.f
};

/// SDG nodes a criterion point starts from.
std::set<int> seed_nodes(const Sdg &sdg, const lang::ProgramIR &ir, const CriterionPoint &p);

/// Two-phase traversal over reversed edges; phase one never descends into
/// callees (param-out edges are deferred to phase two), phase two never
/// ascends to callers except through cross-method heap edges.
SliceResult backward_slice(const Sdg &sdg, const lang::ProgramIR &ir, const SlicingCriterion &c);

/// Dual traversal over forward edges: phase one ascends to callers and stays
/// level through summaries, deferring param-in and call edges to phase two.
SliceResult forward_slice(const Sdg &sdg, const lang::ProgramIR &ir, const SlicingCriterion &c);

SliceResult slice(const Sdg &sdg, const lang::ProgramIR &ir, const SlicingCriterion &c);

/// Union of results of one direction. Throws AnalysisError on mixed directions.
SliceResult merge_slices(const std::vector<SliceResult> &results);

SliceMembers slice_members(const lang::ProgramIR &ir, const std::set<lang::StmtRef> &stmts);

/// `{criterion, direction, statements, members}` with sorted arrays and a trailing newline.
std::string slice_json(const lang::ProgramIR &ir, const SliceResult &r);

/// Candidate criteria for a method: its return, the fields it (or anything it
/// calls) writes, then its prints.
std::vector<std::string> propose_criteria(const Analyses &a, int method);

} // namespace mol::slicing
