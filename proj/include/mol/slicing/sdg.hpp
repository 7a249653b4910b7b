#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mol/slicing/pipeline.hpp"

namespace mol::slicing {

enum class NodeKind { Entry, Stmt, ActualIn, ActualOut, FormalIn, FormalOut };
enum class EdgeKind { Control, Data, Call, ParamIn, ParamOut, Summary };

const char *node_kind_name(NodeKind k);
const char *edge_kind_name(EdgeKind k);

struct SdgNode {
  NodeKind kind = NodeKind::Stmt;
  int method = -1;
  int stmt = -1;  // Stmt/ActualIn/ActualOut: statement index; otherwise -1
  int param = -1; // ActualIn/FormalIn: argument position (receiver excluded)
};

struct SdgEdge {
  int from = -1;
  int to = -1;
  EdgeKind kind = EdgeKind::Data;
  bool heap = false; // field dependence: may link different activations
  auto operator<=>(const SdgEdge &) const = default;
};

struct Sdg {
  std::vector<SdgNode> nodes;
  std::vector<SdgEdge> edges;
  std::vector<std::vector<int>> out; // edge indices by source node
  std::vector<std::vector<int>> in;  // edge indices by target node

  std::map<int, int> entry_of;
  std::map<lang::StmtRef, int> stmt_node;
  std::map<std::pair<lang::StmtRef, int>, int> actual_in;
  std::map<lang::StmtRef, int> actual_out;
  std::map<std::pair<int, int>, int> formal_in;
  std::map<int, int> formal_out;

  int add_node(SdgNode n);
  /// Adds an edge unless an identical one exists; returns whether it was new.
  bool add_edge(int from, int to, EdgeKind kind, bool heap = false);
  /// Drops edge `index` (renumbering the rest) and rebuilds adjacency.
  void remove_edge(std::size_t index);
  void reindex();

  /// Statement a node projects to; entry and formal nodes project to none.
  std::optional<lang::StmtRef> statement_of(int node) const;
  std::string describe(int node, const lang::ProgramIR &ir) const;
  std::size_t count(EdgeKind kind) const;

private:
  std::set<SdgEdge> present_;
};

/// Control, data, call and parameter edges. Summary edges are added separately.
Sdg build_sdg(const Analyses &a);

/// Adds summary edges actual-in -> actual-out wherever the matching formal-in
/// reaches the formal-out of a target over same-level paths. Returns the number added.
std::size_t add_summary_edges(Sdg &sdg);

/// build_sdg followed by add_summary_edges.
Sdg build_full_sdg(const Analyses &a);

} // namespace mol::slicing
