#include "oracles.hpp"

#include <functional>
#include <map>

namespace moltest {

using mol::analysis::Cfg;

namespace {

std::vector<std::vector<int>> with_virtual_exit(const Cfg &cfg) {
  auto succ = cfg.succ;
  succ[cfg.entry()].push_back(cfg.exit());
  return succ;
}

/// Does every path from `from` to exit pass through `via`?
bool post_dominates(const std::vector<std::vector<int>> &succ, int exit, int via, int from) {
  if (via == from)
    return true;
  std::vector<bool> seen(succ.size(), false);
  std::vector<int> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    if (n == exit)
      return false;
    for (int s : succ[n])
      if (s != via && !seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
  }
  return true;
}

} // namespace

std::vector<std::vector<int>> path_control_dependences(const Cfg &cfg) {
  auto succ = with_virtual_exit(cfg);
  const int nodes = cfg.node_count(), exit = cfg.exit();
  std::vector<std::vector<bool>> pdom(nodes, std::vector<bool>(nodes));
  for (int y = 0; y < nodes; ++y)
    for (int x = 0; x < nodes; ++x)
      pdom[y][x] = post_dominates(succ, exit, y, x);

  std::vector<std::vector<int>> out(cfg.stmt_count);
  for (int n = 0; n < cfg.stmt_count; ++n) {
    std::vector<int> deps;
    for (int p = 0; p < nodes; ++p) {
      if (p == exit || succ[p].size() < 2)
        continue;
      if (p != n && pdom[n][p])
        continue; // n strictly post-dominates p
      // Enumerate simple paths p -> ... -> n whose nodes after p are all post-dominated by n.
      bool found = false;
      std::vector<bool> on_path(nodes, false);
      std::function<void(int)> walk = [&](int cur) {
        if (found)
          return;
        if (cur == n) {
          found = true;
          return;
        }
        on_path[cur] = true;
        for (int s : succ[cur])
          if (!on_path[s] && pdom[n][s])
            walk(s);
        on_path[cur] = false;
      };
      for (int s : succ[p])
        if (!found && pdom[n][s])
          walk(s);
      if (found)
        deps.push_back(p == cfg.entry() ? mol::analysis::kEntry : p);
    }
    if (deps.empty())
      deps.push_back(mol::analysis::kEntry); // no governing predicate, e.g. unreachable code
    std::sort(deps.begin(), deps.end());
    out[n] = deps;
  }
  return out;
}

std::vector<mol::analysis::DataDep> naive_reaching_defs(const Cfg &cfg, const mol::lang::MethodIR &method) {
  using Def = std::pair<int, std::string>;
  const int nodes = cfg.node_count();
  std::vector<std::set<Def>> in(nodes), out(nodes);
  for (const auto &p : method.params)
    out[cfg.entry()].insert({mol::analysis::kEntry, p.name});
  bool changed = true;
  while (changed) {
    changed = false;
    for (int n = 0; n < cfg.stmt_count; ++n) {
      std::set<Def> i;
      for (int p : cfg.pred[n])
        i.insert(out[p].begin(), out[p].end());
      std::set<Def> o = i;
      const auto &v = mol::lang::defined_var(method.stmts[n]);
      if (!v.empty()) {
        for (auto it = o.begin(); it != o.end();)
          it = it->second == v ? o.erase(it) : std::next(it);
        o.insert({n, v});
      }
      if (i != in[n] || o != out[n]) {
        in[n] = std::move(i);
        out[n] = std::move(o);
        changed = true;
      }
    }
  }
  std::vector<mol::analysis::DataDep> deps;
  for (int n = 0; n < cfg.stmt_count; ++n)
    for (const auto &u : mol::lang::used_vars(method.stmts[n]))
      for (const auto &[d, var] : in[n])
        if (var == u)
          deps.push_back({n, d, u});
  std::sort(deps.begin(), deps.end());
  return deps;
}

std::set<std::pair<int, int>> brute_force_summaries(const mol::slicing::Sdg &sdg) {
  using mol::slicing::EdgeKind;
  using mol::slicing::NodeKind;
  std::set<std::pair<int, int>> summaries;
  for (;;) {
    std::size_t before = summaries.size();
    for (const auto &[key, fi] : sdg.formal_in) {
      auto fo = sdg.formal_out.find(key.first);
      if (fo == sdg.formal_out.end())
        continue;
      // Forward reachability inside the callee over same-level edges.
      std::set<int> seen{fi};
      std::vector<int> stack{fi};
      while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        std::vector<int> next;
        for (int ei : sdg.out[n]) {
          const auto &e = sdg.edges[ei];
          if (e.kind == EdgeKind::Control ||
              (e.kind == EdgeKind::Data && (!e.heap || sdg.nodes[e.from].method == sdg.nodes[e.to].method)))
            next.push_back(e.to);
        }
        for (const auto &[a, b] : summaries)
          if (a == n)
            next.push_back(b);
        for (int s : next)
          if (seen.insert(s).second)
            stack.push_back(s);
      }
      if (!seen.count(fo->second))
        continue;
      // Every call site bound to this callee through both parameter edges.
      for (int ei : sdg.in[fi]) {
        const auto &pin = sdg.edges[ei];
        if (pin.kind != EdgeKind::ParamIn)
          continue;
        const auto &ai = sdg.nodes[pin.from];
        auto ao = sdg.actual_out.find({ai.method, ai.stmt});
        if (ao == sdg.actual_out.end())
          continue;
        for (int oi : sdg.out[fo->second])
          if (sdg.edges[oi].kind == EdgeKind::ParamOut && sdg.edges[oi].to == ao->second)
            summaries.insert({pin.from, ao->second});
      }
    }
    if (summaries.size() == before)
      return summaries;
  }
}

} // namespace moltest
