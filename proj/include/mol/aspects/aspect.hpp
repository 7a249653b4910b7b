#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mol/slicing/slicer.hpp"

namespace mol::aspects {

struct AspectSpec {
  std::string name;
  std::vector<std::string> criteria;
  std::map<std::string, std::int64_t> bind;
};

/// Parses `{"aspects": [{"name", "criteria", "bind"?}]}`. Throws AnalysisError
/// on schema violations.
std::vector<AspectSpec> parse_aspect_spec(const std::string &json_text);

struct AspectSlice {
  std::string name;
  std::vector<std::string> criteria;
  slicing::SliceResult slice;
  slicing::SliceMembers members;
  /// Included statement ids of every member method.
  std::map<std::string, std::set<std::string>> method_statements;
  /// The subset of method_statements whose body is only partly included.
  std::map<std::string, std::set<std::string>> partial_methods;
};

/// Merged backward slice of `criteria`. Criterion errors are rethrown
/// prefixed with the aspect name.
AspectSlice extract_aspect(const slicing::Analyses &a, const slicing::Sdg &sdg, const std::string &name,
                           const std::vector<std::string> &criteria);

/// Extracts every aspect of `specs` from `ir`; aspects with bindings are
/// sliced on the specialized program.
std::vector<AspectSlice> extract_aspects(const lang::ProgramIR &ir, const std::vector<AspectSpec> &specs,
                                         analysis::CallGraphMode mode);

struct MemberClassification {
  std::set<std::string> shared;
  std::set<std::string> multiply_defined;
  std::map<std::string, std::set<std::string>> exclusive; // aspect -> members
  bool operator==(const MemberClassification &) const = default;
};

/// Throws AnalysisError on duplicate aspect names.
MemberClassification classify_members(const std::vector<AspectSlice> &aspects);

struct Cell {
  std::vector<std::string> in; // sorted aspect names
  std::set<std::string> classes, methods, fields, statements;
  bool operator==(const Cell &) const = default;
};

struct AspectStats {
  std::string aspect;
  std::size_t sliced_classes = 0, exclusive_classes = 0, methods = 0, fields = 0, statements = 0;
  bool operator==(const AspectStats &) const = default;
};

struct DiffReport {
  std::vector<std::string> aspects;
  std::vector<Cell> cells; // non-empty cells, ordered by `in`
  std::vector<AspectStats> stats;
  MemberClassification classification;
  bool operator==(const DiffReport &) const = default;
};

DiffReport diff(const std::vector<AspectSlice> &aspects);

/// `json` or `html`; throws AnalysisError for anything else. With `ir`, the
/// HTML view also shows each statement's text.
std::string render_report(const DiffReport &report, const std::string &format,
                          const lang::ProgramIR *ir = nullptr);

DiffReport parse_report(const std::string &json_text);

} // namespace mol::aspects
