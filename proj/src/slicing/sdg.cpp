#include "mol/slicing/sdg.hpp"

#include <algorithm>

namespace mol::slicing {

using lang::IrStmt;
using lang::Op;
using lang::StmtRef;

const char *node_kind_name(NodeKind k) {
  switch (k) {
  case NodeKind::Entry: return "entry";
  case NodeKind::Stmt: return "stmt";
  case NodeKind::ActualIn: return "actual-in";
  case NodeKind::ActualOut: return "actual-out";
  case NodeKind::FormalIn: return "formal-in";
  case NodeKind::FormalOut: return "formal-out";
  }
  return "?";
}

const char *edge_kind_name(EdgeKind k) {
  switch (k) {
  case EdgeKind::Control: return "control";
  case EdgeKind::Data: return "data";
  case EdgeKind::Call: return "call";
  case EdgeKind::ParamIn: return "param-in";
  case EdgeKind::ParamOut: return "param-out";
  case EdgeKind::Summary: return "summary";
  }
  return "?";
}

int Sdg::add_node(SdgNode n) {
  nodes.push_back(n);
  out.emplace_back();
  in.emplace_back();
  return static_cast<int>(nodes.size()) - 1;
}

bool Sdg::add_edge(int from, int to, EdgeKind kind, bool heap) {
  SdgEdge e{from, to, kind, heap};
  if (!present_.insert(e).second)
    return false;
  edges.push_back(e);
  int idx = static_cast<int>(edges.size()) - 1;
  out[from].push_back(idx);
  in[to].push_back(idx);
  return true;
}

void Sdg::remove_edge(std::size_t index) {
  present_.erase(edges.at(index));
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(index));
  reindex();
}

void Sdg::reindex() {
  out.assign(nodes.size(), {});
  in.assign(nodes.size(), {});
  present_.clear();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    present_.insert(edges[i]);
    out[edges[i].from].push_back(static_cast<int>(i));
    in[edges[i].to].push_back(static_cast<int>(i));
  }
}

std::optional<StmtRef> Sdg::statement_of(int node) const {
  const auto &n = nodes[node];
  switch (n.kind) {
  case NodeKind::Stmt:
  case NodeKind::ActualIn:
  case NodeKind::ActualOut:
    return StmtRef{n.method, n.stmt};
  default:
    return std::nullopt;
  }
}

std::string Sdg::describe(int node, const lang::ProgramIR &ir) const {
  const auto &n = nodes[node];
  const auto &m = ir.methods[n.method];
  switch (n.kind) {
  case NodeKind::Entry: return "entry " + m.qualified();
  case NodeKind::Stmt: return ir.stmt_id({n.method, n.stmt});
  case NodeKind::ActualIn: return "actual-in " + ir.stmt_id({n.method, n.stmt}) + "[" + std::to_string(n.param) + "]";
  case NodeKind::ActualOut: return "actual-out " + ir.stmt_id({n.method, n.stmt});
  case NodeKind::FormalIn: return "formal-in " + m.qualified() + "(" + m.params[n.param].name + ")";
  case NodeKind::FormalOut: return "formal-out " + m.qualified();
  }
  return "?";
}

std::size_t Sdg::count(EdgeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const SdgEdge &e) { return e.kind == kind; }));
}

namespace {

bool static_callee_returns(const lang::ProgramIR &ir, const IrStmt &s) {
  int callee = ir.find_method(s.callee_owner, s.method);
  return callee >= 0 && ir.methods[callee].returns_value();
}

} // namespace

Sdg build_sdg(const Analyses &a) {
  const auto &ir = a.ir;
  Sdg g;
  const int methods = static_cast<int>(ir.methods.size());

  for (int m = 0; m < methods; ++m) {
    const auto &method = ir.methods[m];
    g.entry_of[m] = g.add_node({NodeKind::Entry, m, -1, -1});
    for (int i = 0; i < static_cast<int>(method.params.size()); ++i)
      g.formal_in[{m, i}] = g.add_node({NodeKind::FormalIn, m, -1, i});
    if (method.returns_value())
      g.formal_out[m] = g.add_node({NodeKind::FormalOut, m, -1, -1});
    for (int k = 0; k < static_cast<int>(method.stmts.size()); ++k) {
      const IrStmt &s = method.stmts[k];
      if (s.removed)
        continue;
      StmtRef r{m, k};
      g.stmt_node[r] = g.add_node({NodeKind::Stmt, m, k, -1});
      if (s.op != Op::Call)
        continue;
      for (int i = 0; i + 1 < static_cast<int>(s.uses.size()); ++i)
        g.actual_in[{r, i}] = g.add_node({NodeKind::ActualIn, m, k, i});
      if (static_callee_returns(ir, s))
        g.actual_out[r] = g.add_node({NodeKind::ActualOut, m, k, -1});
    }
  }

  for (int m = 0; m < methods; ++m) {
    const auto &method = ir.methods[m];
    const int entry = g.entry_of[m];
    for (int i = 0; i < static_cast<int>(method.params.size()); ++i)
      g.add_edge(entry, g.formal_in[{m, i}], EdgeKind::Control);
    if (method.returns_value())
      g.add_edge(entry, g.formal_out[m], EdgeKind::Control);

    for (int k = 0; k < static_cast<int>(method.stmts.size()); ++k) {
      auto it = g.stmt_node.find({m, k});
      if (it == g.stmt_node.end())
        continue;
      const int node = it->second;
      for (int p : a.control[m][k]) {
        int src = p == analysis::kEntry ? entry : g.stmt_node.at({m, p});
        g.add_edge(src, node, EdgeKind::Control);
      }
      const IrStmt &s = method.stmts[k];
      if (s.op == Op::Call) {
        for (int i = 0; i + 1 < static_cast<int>(s.uses.size()); ++i)
          g.add_edge(node, g.actual_in.at({{m, k}, i}), EdgeKind::Control);
        if (auto ao = g.actual_out.find({m, k}); ao != g.actual_out.end())
          g.add_edge(node, ao->second, EdgeKind::Control);
      }
      if (s.op == Op::Return && !s.uses.empty() && method.returns_value())
        g.add_edge(node, g.formal_out.at(m), EdgeKind::Data);
    }

    for (const auto &d : a.data[m]) {
      int src;
      if (d.def == analysis::kEntry) {
        int p = method.param_index(d.var);
        if (p < 0)
          continue;
        src = g.formal_in.at({m, p});
      } else {
        StmtRef def{m, d.def};
        const IrStmt &ds = ir.stmt(def);
        auto ao = g.actual_out.find(def);
        src = ds.op == Op::Call && ds.dst == d.var && ao != g.actual_out.end() ? ao->second
                                                                               : g.stmt_node.at(def);
      }
      StmtRef use{m, d.use};
      const IrStmt &us = ir.stmt(use);
      if (us.op == Op::Call) {
        if (us.uses[0] == d.var)
          g.add_edge(src, g.stmt_node.at(use), EdgeKind::Data);
        for (int i = 0; i + 1 < static_cast<int>(us.uses.size()); ++i)
          if (us.uses[i + 1] == d.var)
            g.add_edge(src, g.actual_in.at({use, i}), EdgeKind::Data);
      } else {
        g.add_edge(src, g.stmt_node.at(use), EdgeKind::Data);
      }
    }
  }

  for (const auto &f : a.fields) {
    auto w = g.stmt_node.find(f.write);
    auto r = g.stmt_node.find(f.read);
    if (w == g.stmt_node.end() || r == g.stmt_node.end())
      continue;
    // Even within one method the write may come from an earlier activation, so
    // every field dependence can lead back out to callers.
    g.add_edge(w->second, r->second, EdgeKind::Data, true);
  }

  for (const auto &[site, targets] : a.cg.targets) {
    auto sn = g.stmt_node.find(site);
    if (sn == g.stmt_node.end())
      continue;
    const IrStmt &s = ir.stmt(site);
    auto ao = g.actual_out.find(site);
    for (int t : targets) {
      g.add_edge(sn->second, g.entry_of.at(t), EdgeKind::Call);
      for (int i = 0; i + 1 < static_cast<int>(s.uses.size()); ++i)
        if (auto fi = g.formal_in.find({t, i}); fi != g.formal_in.end())
          g.add_edge(g.actual_in.at({site, i}), fi->second, EdgeKind::ParamIn);
      if (ao != g.actual_out.end())
        if (auto fo = g.formal_out.find(t); fo != g.formal_out.end())
          g.add_edge(fo->second, ao->second, EdgeKind::ParamOut);
    }
  }
  return g;
}

namespace {

bool same_level(const Sdg &g, const SdgEdge &e) {
  if (e.kind == EdgeKind::Data)
    return !e.heap || g.nodes[e.from].method == g.nodes[e.to].method;
  return e.kind == EdgeKind::Control || e.kind == EdgeKind::Summary;
}

} // namespace

std::size_t add_summary_edges(Sdg &g) {
  std::size_t added = 0;
  // reach[n] holds the formal-outs that n reaches along same-level paths.
  std::vector<std::set<int>> reach(g.nodes.size());
  std::set<std::pair<int, int>> work;
  auto propagate = [&](int n, int fo) {
    if (reach[n].insert(fo).second)
      work.insert({n, fo});
  };
  for (const auto &[m, fo] : g.formal_out)
    propagate(fo, fo);

  while (!work.empty()) {
    auto [n, fo] = *work.begin();
    work.erase(work.begin());
    if (g.nodes[n].kind == NodeKind::FormalIn) {
      std::vector<int> in_edges = g.in[n];
      for (int ei : in_edges) {
        if (g.edges[ei].kind != EdgeKind::ParamIn)
          continue;
        int ai = g.edges[ei].from;
        const auto &an = g.nodes[ai];
        auto ao = g.actual_out.find({an.method, an.stmt});
        if (ao == g.actual_out.end())
          continue;
        bool linked = false;
        for (int oi : g.out[fo])
          linked = linked || (g.edges[oi].kind == EdgeKind::ParamOut && g.edges[oi].to == ao->second);
        if (!linked || !g.add_edge(ai, ao->second, EdgeKind::Summary))
          continue;
        ++added;
        for (int fo2 : std::set<int>(reach[ao->second]))
          propagate(ai, fo2);
      }
      continue;
    }
    for (int ei : g.in[n])
      if (same_level(g, g.edges[ei]))
        propagate(g.edges[ei].from, fo);
  }
  return added;
}

Sdg build_full_sdg(const Analyses &a) {
  Sdg g = build_sdg(a);
  add_summary_edges(g);
  return g;
}

} // namespace mol::slicing
