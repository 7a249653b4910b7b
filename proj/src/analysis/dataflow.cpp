#include "mol/analysis/dataflow.hpp"

#include <map>
#include <set>

namespace mol::analysis {

namespace {

struct DefSite {
  int node; // statement index or kEntry
  std::string var;
};

} // namespace

std::vector<DataDep> reaching_defs(const Cfg &cfg, const lang::MethodIR &method) {
  std::vector<DefSite> defs;
  std::map<std::string, std::vector<int>> defs_of; // var -> indices into defs
  for (const auto &p : method.params) {
    defs_of[p.name].push_back(static_cast<int>(defs.size()));
    defs.push_back({kEntry, p.name});
  }
  std::vector<int> gen(cfg.node_count(), -1);
  for (int k = 0; k < cfg.stmt_count; ++k) {
    const auto &v = lang::defined_var(method.stmts[k]);
    if (v.empty())
      continue;
    gen[k] = static_cast<int>(defs.size());
    defs_of[v].push_back(gen[k]);
    defs.push_back({k, v});
  }

  const std::size_t nd = defs.size();
  using Bits = std::vector<bool>;
  std::vector<Bits> in(cfg.node_count(), Bits(nd, false));
  std::vector<Bits> out(cfg.node_count(), Bits(nd, false));
  for (std::size_t d = 0; d < nd; ++d)
    if (defs[d].node == kEntry)
      out[cfg.entry()][d] = true;

  auto transfer = [&](int n) {
    Bits o = in[n];
    if (n < cfg.stmt_count && gen[n] >= 0) {
      for (int d : defs_of[defs[gen[n]].var])
        o[d] = false;
      o[gen[n]] = true;
    }
    return o;
  };

  std::set<int> work;
  for (int k = 0; k < cfg.stmt_count; ++k)
    work.insert(k);
  while (!work.empty()) {
    int n = *work.begin();
    work.erase(work.begin());
    Bits acc(nd, false);
    for (int p : cfg.pred[n])
      for (std::size_t d = 0; d < nd; ++d)
        if (out[p][d])
          acc[d] = true;
    in[n] = std::move(acc);
    Bits o = transfer(n);
    if (o != out[n]) {
      out[n] = std::move(o);
      for (int s : cfg.succ[n])
        if (s < cfg.stmt_count)
          work.insert(s);
    }
  }

  std::set<DataDep> deps;
  for (int k = 0; k < cfg.stmt_count; ++k) {
    for (const auto &u : lang::used_vars(method.stmts[k])) {
      auto it = defs_of.find(u);
      if (it == defs_of.end())
        continue;
      for (int d : it->second)
        if (in[k][d])
          deps.insert({k, defs[d].node, u});
    }
  }
  return {deps.begin(), deps.end()};
}

} // namespace mol::analysis
