#include "mol/analysis/cfg.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace mol::analysis {

using lang::Op;

namespace {

std::vector<bool> reaches_exit(const Cfg &cfg) {
  std::vector<bool> seen(cfg.node_count(), false);
  std::vector<int> work{cfg.exit()};
  seen[cfg.exit()] = true;
  while (!work.empty()) {
    int n = work.back();
    work.pop_back();
    for (int p : cfg.pred[n])
      if (!seen[p]) {
        seen[p] = true;
        work.push_back(p);
      }
  }
  return seen;
}

void add_edge(Cfg &cfg, int from, int to) {
  cfg.succ[from].push_back(to);
  cfg.pred[to].push_back(from);
}

} // namespace

Cfg build_cfg(const lang::MethodIR &method, int method_index) {
  Cfg cfg;
  cfg.method = method_index;
  cfg.stmt_count = static_cast<int>(method.stmts.size());
  cfg.succ.resize(cfg.node_count());
  cfg.pred.resize(cfg.node_count());
  const int n = cfg.stmt_count;
  auto next = [&](int k) { return k + 1 < n ? k + 1 : cfg.exit(); };
  auto label = [&](int t) { return t >= n ? cfg.exit() : t; };

  add_edge(cfg, cfg.entry(), n > 0 ? 0 : cfg.exit());
  for (int k = 0; k < n; ++k) {
    const auto &s = method.stmts[k];
    if (s.removed) {
      add_edge(cfg, k, next(k));
      continue;
    }
    switch (s.op) {
    case Op::IfGoto:
      add_edge(cfg, k, next(k));
      add_edge(cfg, k, label(s.target));
      break;
    case Op::Goto:
      add_edge(cfg, k, label(s.target));
      break;
    case Op::Return:
      add_edge(cfg, k, cfg.exit());
      break;
    default:
      add_edge(cfg, k, next(k));
    }
  }

  // Exit augmentation: link the first node of each non-terminating region to exit.
  for (;;) {
    auto ok = reaches_exit(cfg);
    int stuck = -1;
    for (int k = 0; k < cfg.node_count() && stuck < 0; ++k)
      if (!ok[k])
        stuck = k;
    if (stuck < 0)
      break;
    add_edge(cfg, stuck, cfg.exit());
    cfg.augmented.emplace_back(stuck, cfg.exit());
  }
  return cfg;
}

std::vector<int> post_dominators(const Cfg &cfg) {
  // Cooper/Harvey/Kennedy on the reversed graph rooted at exit.
  const int total = cfg.node_count();
  std::vector<int> order;
  std::vector<int> rpo_index(total, -1);
  std::vector<bool> seen(total, false);
  std::function<void(int)> dfs = [&](int n) {
    seen[n] = true;
    for (int p : cfg.pred[n])
      if (!seen[p])
        dfs(p);
    order.push_back(n);
  };
  dfs(cfg.exit());
  std::reverse(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i)
    rpo_index[order[i]] = static_cast<int>(i);

  std::vector<int> ipdom(total, -2);
  ipdom[cfg.exit()] = cfg.exit();
  auto intersect = [&](int a, int b) {
    while (a != b) {
      while (rpo_index[a] > rpo_index[b])
        a = ipdom[a];
      while (rpo_index[b] > rpo_index[a])
        b = ipdom[b];
    }
    return a;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int n : order) {
      if (n == cfg.exit())
        continue;
      int acc = -2;
      for (int s : cfg.succ[n]) {
        if (ipdom[s] == -2)
          continue;
        acc = acc == -2 ? s : intersect(s, acc);
      }
      if (acc != -2 && ipdom[n] != acc) {
        ipdom[n] = acc;
        changed = true;
      }
    }
  }
  ipdom[cfg.exit()] = -1;
  return ipdom;
}

std::vector<std::vector<int>> control_dependences(const Cfg &cfg, const std::vector<int> &ipdom) {
  std::vector<std::set<int>> deps(cfg.stmt_count);
  auto walk = [&](int from, int stop, int source) {
    for (int runner = from; runner >= 0 && runner != stop && runner != cfg.exit();
         runner = ipdom[runner])
      if (runner < cfg.stmt_count)
        deps[runner].insert(source);
  };
  for (int p = 0; p < cfg.stmt_count; ++p) {
    if (cfg.succ[p].size() < 2)
      continue;
    for (int s : cfg.succ[p])
      walk(s, ipdom[p], p);
  }
  // Entry acts as a predicate with one branch into the body and one to exit.
  for (int s : cfg.succ[cfg.entry()])
    walk(s, cfg.exit(), kEntry);

  std::vector<std::vector<int>> out(cfg.stmt_count);
  for (int k = 0; k < cfg.stmt_count; ++k) {
    if (deps[k].empty())
      deps[k].insert(kEntry);
    out[k].assign(deps[k].begin(), deps[k].end());
  }
  return out;
}

} // namespace mol::analysis
