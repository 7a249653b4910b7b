#include "mol/interp/check.hpp"

#include <algorithm>
#include <random>

#include "mol/lang/lower.hpp"
#include "mol/lang/reconstruct.hpp"
#include "mol/lang/source.hpp"

namespace mol::interp {

using lang::StmtRef;
using slicing::CriterionPoint;

const char *verdict_name(VerdictKind k) {
  switch (k) {
  case VerdictKind::Pass: return "pass";
  case VerdictKind::Counterexample: return "counterexample";
  case VerdictKind::ReconstructionFailure: return "reconstruction-failure";
  }
  return "?";
}

std::vector<RunInput> random_inputs(const lang::ProgramIR &ir, std::size_t n, std::uint64_t seed,
                                    const std::map<std::string, std::int64_t> &fixed) {
  std::set<std::string> keys;
  for (const auto &m : ir.methods)
    for (const auto &s : m.stmts)
      if (s.op == lang::Op::Input)
        keys.insert(s.key);
  std::mt19937_64 rng(seed);
  std::vector<RunInput> out(n);
  for (auto &in : out) {
    for (const auto &k : keys) {
      // Half the draws are small so equality flags and loop bounds get exercised.
      std::uint64_t coin = rng(), raw = rng();
      in.bindings[k] = coin % 2 ? static_cast<std::int64_t>(raw % 6) - 2 : static_cast<std::int64_t>(raw % 2001) - 1000;
    }
    for (const auto &[k, v] : fixed)
      in.bindings[k] = v;
  }
  return out;
}

namespace {

/// Carries a designator over to the rebuilt statement by operand position.
std::optional<CriterionPoint> remap(const lang::IrStmt &from, const lang::IrStmt &to, StmtRef at,
                                    const CriterionPoint &p) {
  if (p.field)
    return to.field == p.var ? std::optional(CriterionPoint{at, p.var, true}) : std::nullopt;
  if (from.dst == p.var && !to.dst.empty())
    return CriterionPoint{at, to.dst, false};
  for (std::size_t i = 0; i < from.uses.size() && i < to.uses.size(); ++i)
    if (from.uses[i] == p.var)
      return CriterionPoint{at, to.uses[i], false};
  return std::nullopt;
}

} // namespace

Verdict check_slice(const slicing::Analyses &a, const slicing::Sdg &sdg, const slicing::SlicingCriterion &c,
                    const std::vector<RunInput> &inputs) {
  Verdict v;
  auto result = slicing::backward_slice(sdg, a.ir, c);
  lang::Reconstruction rec;
  lang::ProgramIR rebuilt;
  try {
    rec = lang::reconstruct_source(a.ir, result.statements);
    v.source = rec.source;
    rebuilt = lang::compile(rec.source);
  } catch (const CompileError &e) {
    v.kind = VerdictKind::ReconstructionFailure;
    v.message = "rebuilt source does not compile: " + e.diagnostics().front().str();
    return v;
  } catch (const std::exception &e) {
    v.kind = VerdictKind::ReconstructionFailure;
    v.message = e.what();
    return v;
  }

  auto mapping = lang::map_to_rebuilt(rebuilt, rec);
  std::map<CriterionPoint, CriterionPoint> points;
  std::set<CriterionPoint> rebuilt_watch;
  for (const auto &p : c.points) {
    auto it = mapping.find(p.stmt);
    std::optional<CriterionPoint> q;
    if (it != mapping.end())
      q = remap(a.ir.stmt(p.stmt), rebuilt.stmt(it->second), it->second, p);
    if (!q) {
      v.kind = VerdictKind::ReconstructionFailure;
      v.message = "criterion point " + a.ir.stmt_id(p.stmt) + " has no counterpart in the rebuilt program";
      return v;
    }
    points.emplace(p, *q);
    rebuilt_watch.insert(*q);
  }

  for (const auto &in : inputs) {
    Trace orig = run(a.ir, in, c.points);
    if (orig.status != RunStatus::Ok) {
      ++v.skipped;
      continue;
    }
    ++v.compared;
    Trace sliced = run(rebuilt, in, rebuilt_watch);
    bool same = sliced.status == RunStatus::Ok;
    for (const auto &[p, q] : points)
      same = same && orig.criterion_values[p] == sliced.criterion_values[q];
    if (!same) {
      if (v.counterexamples.empty())
        v.message = sliced.status == RunStatus::Ok ? "criterion values differ"
                                                   : std::string("sliced run ended with ") + status_name(sliced.status);
      v.counterexamples.push_back(in);
    }
  }
  if (!v.counterexamples.empty())
    v.kind = VerdictKind::Counterexample;
  return v;
}

Verdict check_slice(const slicing::Analyses &a, const slicing::SlicingCriterion &c,
                    const std::vector<RunInput> &inputs) {
  return check_slice(a, slicing::build_full_sdg(a), c, inputs);
}

slicing::Sdg mutate_sdg(const slicing::Analyses &a, std::size_t edge) {
  auto g = slicing::build_sdg(a);
  g.remove_edge(edge);
  slicing::add_summary_edges(g);
  return g;
}

} // namespace mol::interp
