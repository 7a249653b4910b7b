#include "mol/analysis/field_deps.hpp"

#include <algorithm>
#include <map>

namespace mol::analysis {

using lang::Op;
using lang::StmtRef;

namespace {

bool intersects(const SiteSet &a, const SiteSet &b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      return true;
  }
  return false;
}

} // namespace

std::vector<FieldDep> field_data_deps(const lang::ProgramIR &ir, const CallGraph &cg,
                                      const PointsToResult &pts) {
  std::vector<StmtRef> reads, writes;
  for (const auto &r : ir.all_stmts()) {
    const auto &s = ir.stmt(r);
    if (s.removed)
      continue;
    if (s.op == Op::FieldRead)
      reads.push_back(r);
    else if (s.op == Op::FieldWrite)
      writes.push_back(r);
  }

  std::map<int, std::set<int>> reach;
  for (std::size_t m = 0; m < ir.methods.size(); ++m)
    reach[static_cast<int>(m)] = cg.reach(static_cast<int>(m));
  auto may_reach = [&](int wm, int rm) {
    if (reach[wm].count(rm))
      return true;
    for (const auto &[c, rs] : reach)
      if (rs.count(wm) && rs.count(rm))
        return true;
    return false;
  };

  std::vector<FieldDep> out;
  for (const auto &w : writes) {
    const auto &ws = ir.stmt(w);
    const SiteSet &wb = pts.of(w.method, ws.uses[0]);
    for (const auto &r : reads) {
      const auto &rs = ir.stmt(r);
      if (rs.field != ws.field)
        continue;
      if (!intersects(wb, pts.of(r.method, rs.uses[0])))
        continue;
      if (!may_reach(w.method, r.method))
        continue;
      out.push_back({r, w, ws.field_owner + "." + ws.field});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace mol::analysis
