#include "mol/aspects/refers_to.hpp"

#include <vector>

#include "mol/lang/source.hpp"

namespace mol::aspects {

using lang::Op;

std::set<std::string> RefersToGraph::targets_of(const std::string &f) const {
  std::set<std::string> out;
  for (auto it = edges.lower_bound({f, ""}); it != edges.end() && it->first == f; ++it)
    out.insert(it->second);
  return out;
}

RefersToGraph build_refers_to(const lang::ProgramIR &ir, const analysis::CallGraph &cg) {
  RefersToGraph g;
  for (const auto &c : ir.classes)
    for (const auto &f : c.fields)
      g.attributes.insert(c.name + "." + f.name);
  for (int m = 0; m < static_cast<int>(ir.methods.size()); ++m) {
    const auto &method = ir.methods[m];
    const std::string self = method.qualified();
    g.functions.insert(self);
    for (int k = 0; k < static_cast<int>(method.stmts.size()); ++k) {
      const auto &s = method.stmts[k];
      if (s.removed)
        continue;
      if (s.op == Op::FieldRead || s.op == Op::FieldWrite) {
        g.edges.insert({self, s.field_owner + "." + s.field});
      } else if (s.op == Op::Call) {
        auto it = cg.targets.find({m, k});
        auto targets = it != cg.targets.end() ? it->second : analysis::cha_targets(ir, s);
        for (int t : targets)
          g.edges.insert({self, ir.methods[t].qualified()});
      }
    }
  }
  return g;
}

std::set<std::string> refers_to_closure(const RefersToGraph &g, const std::set<std::string> &roots) {
  std::set<std::string> seen;
  std::vector<std::string> stack;
  for (const auto &r : roots) {
    if (!g.contains(r))
      throw AnalysisError("unknown member '" + r + "'");
    if (seen.insert(r).second)
      stack.push_back(r);
  }
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    for (const auto &t : g.targets_of(cur))
      if (seen.insert(t).second)
        stack.push_back(t);
  }
  return seen;
}

} // namespace mol::aspects
