#include <gtest/gtest.h>

#include "json.hpp"

#include "fixtures.hpp"
#include "mol/analysis/specialize.hpp"
#include "mol/slicing/slicer.hpp"
#include "oracles.hpp"

using namespace mol;
using namespace mol::slicing;
using analysis::CallGraphMode;
using lang::StmtRef;

namespace {

std::set<std::string> ids(const lang::ProgramIR &ir, const std::set<StmtRef> &s) {
  std::set<std::string> out;
  for (const auto &r : s)
    out.insert(ir.stmt_id(r));
  return out;
}

std::set<std::string> backward(const Analyses &a, const Sdg &sdg, const std::string &c) {
  return ids(a.ir, slice(sdg, a.ir, resolve_criterion(c, a)).statements);
}

std::set<std::string> forward(const Analyses &a, const Sdg &sdg, const std::string &c) {
  return ids(a.ir, slice(sdg, a.ir, resolve_criterion(c, a, Direction::Forward)).statements);
}

std::set<std::string> method_range(const std::string &m, int from, int to) {
  std::set<std::string> out;
  for (int k = from; k <= to; ++k)
    out.insert(m + "#" + std::to_string(k));
  return out;
}

std::set<std::string> unite(std::initializer_list<std::set<std::string>> parts) {
  std::set<std::string> out;
  for (const auto &p : parts)
    out.insert(p.begin(), p.end());
  return out;
}

std::string criterion_error(const Analyses &a, const std::string &text) {
  try {
    resolve_criterion(text, a);
  } catch (const AnalysisError &e) {
    return e.what();
  }
  return "";
}

int count_edges(const Sdg &sdg, int node, EdgeKind kind, bool outgoing) {
  int n = 0;
  for (int ei : outgoing ? sdg.out[node] : sdg.in[node])
    n += sdg.edges[ei].kind == kind;
  return n;
}

} // namespace

TEST(Sdg, SingleMethodHasOnlyIntraproceduralEdges) {
  auto a = analyze(lang::compile("main { var int x = 1; var int y = x; print(y); }"), CallGraphMode::PointsTo);
  Sdg sdg = build_full_sdg(a);
  EXPECT_EQ(sdg.nodes.size(), 4u);
  EXPECT_EQ(sdg.count(EdgeKind::Control), 3u);
  EXPECT_EQ(sdg.count(EdgeKind::Data), 2u);
  EXPECT_EQ(sdg.edges.size(), 5u);
}

TEST(Sdg, TruckYearsSinceParameters) {
  auto a = moltest::analyze_fixture("truck.mol");
  Sdg sdg = build_full_sdg(a);
  int m = a.ir.find_method("Truck.yearsSince");
  ASSERT_TRUE(sdg.formal_in.count({m, 0}));
  EXPECT_FALSE(sdg.formal_in.count({m, 1}));
  ASSERT_TRUE(sdg.formal_out.count(m));
  StmtRef site = *a.ir.parse_stmt_id("Truck.computeResidualValue#2");
  ASSERT_TRUE(sdg.actual_in.count({site, 0}));
  ASSERT_TRUE(sdg.actual_out.count(site));
  EXPECT_TRUE(sdg.add_edge(sdg.actual_in.at({site, 0}), sdg.formal_in.at({m, 0}), EdgeKind::ParamIn) == false);
  EXPECT_TRUE(sdg.add_edge(sdg.formal_out.at(m), sdg.actual_out.at(site), EdgeKind::ParamOut) == false);
}

TEST(Sdg, VisitorCallHasTwoCallees) {
  auto a = moltest::analyze_fixture("visitor.mol");
  Sdg sdg = build_full_sdg(a);
  StmtRef site = *a.ir.parse_stmt_id("Node.accept#0");
  EXPECT_EQ(count_edges(sdg, sdg.actual_in.at({site, 0}), EdgeKind::ParamIn, true), 2);
  EXPECT_EQ(count_edges(sdg, sdg.stmt_node.at(site), EdgeKind::Call, true), 2);

  auto cha = moltest::analyze_fixture("visitor.mol", CallGraphMode::Cha);
  Sdg wide = build_full_sdg(cha);
  EXPECT_EQ(count_edges(wide, wide.actual_in.at({site, 0}), EdgeKind::ParamIn, true), 4);
}

TEST(Sdg, CallSiteShape) {
  for (const auto &name : moltest::corpus()) {
    auto a = moltest::analyze_fixture(name);
    Sdg sdg = build_full_sdg(a);
    for (const auto &[site, targets] : a.cg.targets) {
      const auto &s = a.ir.stmt(site);
      if (!sdg.stmt_node.count(site))
        continue;
      for (std::size_t i = 1; i < s.uses.size(); ++i)
        EXPECT_TRUE(sdg.actual_in.count({site, static_cast<int>(i - 1)})) << name;
      EXPECT_FALSE(sdg.actual_in.count({site, static_cast<int>(s.uses.size() - 1)})) << name;
      int callee = a.ir.find_method(s.callee_owner, s.method);
      EXPECT_EQ(sdg.actual_out.count(site) == 1, a.ir.methods[callee].returns_value()) << name;
      for (int t : targets)
        if (sdg.actual_out.count(site))
          EXPECT_EQ(count_edges(sdg, sdg.actual_out.at(site), EdgeKind::ParamOut, false), int(targets.size()));
    }
    for (const auto &e : sdg.edges)
      if (e.kind == EdgeKind::Summary) {
        const auto &from = sdg.nodes[e.from], &to = sdg.nodes[e.to];
        EXPECT_EQ(from.kind, NodeKind::ActualIn);
        EXPECT_EQ(to.kind, NodeKind::ActualOut);
        EXPECT_EQ(from.method, to.method);
        EXPECT_EQ(from.stmt, to.stmt);
      }
    for (std::size_t n = 0; n < sdg.nodes.size(); ++n)
      if (sdg.nodes[n].kind == NodeKind::Stmt)
        EXPECT_EQ(sdg.stmt_node.at(*sdg.statement_of(static_cast<int>(n))), static_cast<int>(n));
  }
}

TEST(Sdg, ReachableMethodsRepresented) {
  for (const auto &name : moltest::corpus()) {
    auto a = moltest::analyze_fixture(name);
    Sdg sdg = build_full_sdg(a);
    for (int m : a.cg.reachable)
      EXPECT_TRUE(sdg.entry_of.count(m)) << name << " " << a.ir.methods[m].qualified();
  }
}

TEST(Summary, IdentityAndConstant) {
  auto a = analyze(lang::compile("class F {\n"
                                 "  method int id(int x) { return x; }\n"
                                 "  method int k(int x) { return 7; }\n"
                                 "}\n"
                                 "main { var F f = new F; var int a = f.id(1); var int b = f.id(a);\n"
                                 "  var int c = f.k(b); print(c); }"),
                   CallGraphMode::PointsTo);
  Sdg sdg = build_full_sdg(a);
  std::map<std::string, int> per_site;
  for (const auto &e : sdg.edges)
    if (e.kind == EdgeKind::Summary)
      ++per_site[a.ir.stmt_id(*sdg.statement_of(e.to))];
  std::map<std::string, int> want{{"Main.main#2", 1}, {"Main.main#3", 1}};
  EXPECT_EQ(per_site, want);
}

TEST(Summary, TruckYearsSince) {
  auto a = moltest::analyze_fixture("truck.mol");
  Sdg sdg = build_full_sdg(a);
  StmtRef site = *a.ir.parse_stmt_id("Truck.computeResidualValue#2");
  SdgEdge want{sdg.actual_in.at({site, 0}), sdg.actual_out.at(site), EdgeKind::Summary, false};
  EXPECT_NE(std::find(sdg.edges.begin(), sdg.edges.end(), want), sdg.edges.end());
  EXPECT_EQ(sdg.count(EdgeKind::Summary), 1u);
}

TEST(Summary, RecursionFixture) {
  auto a = moltest::analyze_fixture("props/recursion.mol");
  Sdg base = build_sdg(a);
  Sdg full = base;
  add_summary_edges(full);
  std::set<std::pair<int, int>> got;
  for (const auto &e : full.edges)
    if (e.kind == EdgeKind::Summary)
      got.insert({e.from, e.to});
  EXPECT_EQ(got, moltest::brute_force_summaries(base));
  EXPECT_FALSE(got.empty());
}

TEST(Summary, MatchesBruteForceOnCorpus) {
  for (const auto &name : moltest::corpus())
    for (auto mode : {CallGraphMode::PointsTo, CallGraphMode::Cha}) {
      auto a = moltest::analyze_fixture(name, mode);
      Sdg base = build_sdg(a);
      Sdg full = base;
      add_summary_edges(full);
      std::set<std::pair<int, int>> got;
      for (const auto &e : full.edges)
        if (e.kind == EdgeKind::Summary)
          got.insert({e.from, e.to});
      EXPECT_EQ(got, moltest::brute_force_summaries(base)) << name;
    }
}

TEST(Criterion, WritesOnTruck) {
  auto a = moltest::analyze_fixture("truck.mol");
  auto c = resolve_criterion("Truck.residualValue@writes", a);
  ASSERT_EQ(c.points.size(), 1u);
  const auto &p = *c.points.begin();
  EXPECT_EQ(a.ir.stmt_id(p.stmt), "Truck.computeResidualValue#8");
  EXPECT_EQ(p.var, "residualValue");
  EXPECT_TRUE(p.field);
  EXPECT_EQ(c.origin, "Truck.residualValue@writes");
  EXPECT_EQ(c.direction, Direction::Backward);
}

TEST(Criterion, Return) {
  auto a = moltest::analyze_fixture("truck.mol");
  auto c = resolve_criterion("Truck.yearsSince:ret", a);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(a.ir.stmt_id(c.points.begin()->stmt), "Truck.yearsSince#4");
  EXPECT_EQ(c.points.begin()->var, "_t0");

  auto e = moltest::analyze_fixture("props/early_return.mol");
  EXPECT_EQ(resolve_criterion("Grader.grade:ret", e).points.size(), 4u);
}

TEST(Criterion, StatementVariable) {
  auto a = moltest::analyze_fixture("dispatch.mol");
  auto c = resolve_criterion("Main.main:9#result", a);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points.begin()->var, "result");
  EXPECT_FALSE(c.points.begin()->field);
  auto f = resolve_criterion("DisAssembler.execute:0#dtable", a);
  EXPECT_TRUE(f.points.begin()->field);
}

TEST(Criterion, Errors) {
  auto a = moltest::analyze_fixture("truck.mol");
  EXPECT_EQ(criterion_error(a, "Truck.computeResidualValue:99#x"),
            "statement index 99 out of range for Truck.computeResidualValue (9 statements)");
  EXPECT_NE(criterion_error(a, "Nope.m:0#x").find("unknown"), std::string::npos);
  EXPECT_NE(criterion_error(a, "Truck.nope:ret").find("unknown"), std::string::npos);
  EXPECT_NE(criterion_error(a, "Truck.nope@writes").find("unknown"), std::string::npos);
  EXPECT_NE(criterion_error(a, "Truck.computeResidualValue:0#zz").find("not defined or used"), std::string::npos);
  EXPECT_NE(criterion_error(a, "Truck.printObject:ret").find("returns no value"), std::string::npos);
  EXPECT_NE(criterion_error(a, "Truck.serialNumber").find("malformed"), std::string::npos);
  EXPECT_NE(criterion_error(a, "Truck.computeResidualValue:x#y").find("malformed"), std::string::npos);

  auto v = moltest::analyze_fixture("visitor.mol");
  auto u = analyze(lang::compile("class A { field int f; } main { var A a = new A; print(a.f); }"),
                   CallGraphMode::PointsTo);
  EXPECT_NE(criterion_error(u, "A.f@writes").find("no field write"), std::string::npos);
  EXPECT_EQ(criterion_error(v, "Node.marked@writes"), "");
}

TEST(Criterion, RemovedStatement) {
  auto ir = moltest::load_fixture("dispatch.mol");
  auto a = analyze(analysis::specialize(ir, ir.entry, {{"flag", 1}}).ir, CallGraphMode::PointsTo);
  EXPECT_NE(criterion_error(a, "Main.main:8#jre").find("removed by specialization"), std::string::npos);
}

TEST(Backward, TruckResidualValue) {
  auto a = moltest::analyze_fixture("truck.mol");
  Sdg sdg = build_full_sdg(a);
  auto got = backward(a, sdg, "Truck.residualValue@writes");
  auto want = unite({{"Main.main#0", "Main.main#3", "Main.main#4", "Main.main#5", "Main.main#6", "Main.main#7",
                      "Main.main#8", "Main.main#11"},
                     method_range("Truck.computeResidualValue", 0, 6),
                     {"Truck.computeResidualValue#8"},
                     method_range("Truck.yearsSince", 0, 4)});
  // `resValue = 0` is dead but defines the same variable; it is not a dependence.
  want.erase("Truck.computeResidualValue#0");
  EXPECT_EQ(got, want);
}

TEST(Backward, DispatchIncludesBothEngines) {
  auto a = moltest::analyze_fixture("dispatch.mol");
  Sdg sdg = build_full_sdg(a);
  auto got = backward(a, sdg, "Main.main:9#result");
  for (const auto &m : {"DisAssembler.execute#1", "Decompiler.execute#3", "Main.main#6", "Main.main#8"})
    EXPECT_TRUE(got.count(m)) << m;
}

TEST(Backward, StatementWithoutDependences) {
  auto a = analyze(lang::compile("main { var int x = 1; var int y = 2; print(y); }"), CallGraphMode::PointsTo);
  Sdg sdg = build_full_sdg(a);
  EXPECT_EQ(backward(a, sdg, "Main.main:0#x"), (std::set<std::string>{"Main.main#0"}));
}

TEST(Backward, ContainsCriterionStatements) {
  for (const auto &name : moltest::corpus()) {
    auto a = moltest::analyze_fixture(name);
    Sdg sdg = build_full_sdg(a);
    for (int m : a.cg.reachable)
      for (const auto &text : propose_criteria(a, m)) {
        auto c = resolve_criterion(text, a);
        auto r = slice(sdg, a.ir, c);
        for (const auto &p : c.points)
          EXPECT_TRUE(r.statements.count(p.stmt)) << name << " " << text;
      }
  }
}

TEST(Backward, WrongDirectionThrows) {
  auto a = moltest::analyze_fixture("truck.mol");
  Sdg sdg = build_full_sdg(a);
  auto c = resolve_criterion("Truck.yearsSince:ret", a, Direction::Forward);
  EXPECT_THROW(backward_slice(sdg, a.ir, c), AnalysisError);
  c.direction = Direction::Backward;
  EXPECT_THROW(forward_slice(sdg, a.ir, c), AnalysisError);
}

TEST(Forward, TruckPurchaseValue) {
  auto a = moltest::analyze_fixture("truck.mol");
  Sdg sdg = build_full_sdg(a);
  auto got = forward(a, sdg, "Main.main:4#_t1");
  for (const auto &s : {"Truck.computeResidualValue#6", "Truck.computeResidualValue#8", "Main.main#13"})
    EXPECT_TRUE(got.count(s)) << s;
  for (const auto &s : {"Main.main#9", "Main.main#10", "Truck.printObject#2", "Truck.printObject#3"})
    EXPECT_FALSE(got.count(s)) << s;
}

TEST(Forward, DeadStore) {
  auto a = analyze(lang::compile("main { var int x = 1; x = 2; print(x); }"), CallGraphMode::PointsTo);
  Sdg sdg = build_full_sdg(a);
  EXPECT_EQ(forward(a, sdg, "Main.main:0#x"), (std::set<std::string>{"Main.main#0"}));
}

TEST(Forward, DispatchFlag) {
  auto a = moltest::analyze_fixture("dispatch.mol");
  Sdg sdg = build_full_sdg(a);
  auto got = forward(a, sdg, "Main.main:0#flag");
  for (const auto &s : {"Main.main#4", "Main.main#5", "Main.main#6", "Main.main#8", "Main.main#9", "Main.main#10"})
    EXPECT_TRUE(got.count(s)) << s;
  EXPECT_FALSE(got.count("Main.main#1"));
}

TEST(Merge, Idempotent) {
  auto a = moltest::analyze_fixture("truck.mol");
  Sdg sdg = build_full_sdg(a);
  auto s = slice(sdg, a.ir, resolve_criterion("Truck.residualValue@writes", a));
  auto m = merge_slices({s, s});
  EXPECT_EQ(m.statements, s.statements);
  EXPECT_EQ(m.nodes, s.nodes);
  EXPECT_EQ(m.criterion.points, s.criterion.points);
  EXPECT_EQ(m.criterion.origin, s.criterion.origin);
}

TEST(Merge, SideEffects) {
  auto a = moltest::analyze_fixture("sideeffect.mol");
  Sdg sdg = build_full_sdg(a);
  auto s1 = slice(sdg, a.ir, resolve_criterion("Model.shrunk@writes", a));
  auto s2 = slice(sdg, a.ir, resolve_criterion("Model.renamed@writes", a));
  SlicingCriterion both = resolve_criterion("Model.shrunk@writes", a);
  auto more = resolve_criterion("Model.renamed@writes", a).points;
  both.points.insert(more.begin(), more.end());
  EXPECT_EQ(merge_slices({s1, s2}).statements, slice(sdg, a.ir, both).statements);
  EXPECT_EQ(merge_slices({s1, s2}).criterion.origin, "Model.shrunk@writes, Model.renamed@writes");
}

TEST(Merge, DisjointMethods) {
  auto a = moltest::analyze_fixture("truck.mol");
  Sdg sdg = build_full_sdg(a);
  auto s1 = slice(sdg, a.ir, resolve_criterion("Truck.printObject:1#_t0", a, Direction::Forward));
  auto s2 = slice(sdg, a.ir, resolve_criterion("Truck.yearsSince:0#_t2", a, Direction::Forward));
  auto m = merge_slices({s1, s2});
  EXPECT_EQ(m.statements.size(), s1.statements.size() + s2.statements.size());
}

TEST(Merge, Errors) {
  auto a = moltest::analyze_fixture("truck.mol");
  Sdg sdg = build_full_sdg(a);
  auto b = slice(sdg, a.ir, resolve_criterion("Truck.yearsSince:ret", a));
  auto f = slice(sdg, a.ir, resolve_criterion("Truck.yearsSince:ret", a, Direction::Forward));
  EXPECT_THROW(merge_slices({b, f}), AnalysisError);
  EXPECT_THROW(merge_slices({}), AnalysisError);
}

TEST(Propose, Examples) {
  auto s = moltest::analyze_fixture("sideeffect.mol");
  EXPECT_EQ(propose_criteria(s, s.ir.find_method("Proc.process")),
            (std::vector<std::string>{"Model.shrunk@writes", "Model.renamed@writes"}));
  auto t = moltest::analyze_fixture("truck.mol");
  EXPECT_EQ(propose_criteria(t, t.ir.find_method("Truck.yearsSince")),
            std::vector<std::string>{"Truck.yearsSince:ret"});
  EXPECT_EQ(propose_criteria(t, t.ir.find_method("Truck.printObject")),
            (std::vector<std::string>{"Truck.printObject:1#_t0", "Truck.printObject:3#_t1"}));
  auto v = moltest::analyze_fixture("visitor.mol");
  EXPECT_TRUE(propose_criteria(v, v.ir.find_method("Visitor.visit")).empty());
}

TEST(Propose, TransitiveWrites) {
  auto t = moltest::analyze_fixture("truck.mol");
  auto got = propose_criteria(t, t.ir.entry);
  EXPECT_NE(std::find(got.begin(), got.end(), "Truck.residualValue@writes"), got.end());
  EXPECT_NE(std::find(got.begin(), got.end(), "Truck.serialNumber@writes"), got.end());
}

TEST(Json, SliceFormat) {
  auto a = moltest::analyze_fixture("truck.mol");
  Sdg sdg = build_full_sdg(a);
  auto r = slice(sdg, a.ir, resolve_criterion("Truck.residualValue@writes", a));
  std::string text = slice_json(a.ir, r);
  ASSERT_EQ(text.back(), '\n');
  auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["criterion"], "Truck.residualValue@writes");
  EXPECT_EQ(j["direction"], "backward");
  auto stmts = j["statements"].get<std::vector<std::string>>();
  EXPECT_TRUE(std::is_sorted(stmts.begin(), stmts.end()));
  EXPECT_EQ(j["members"]["classes"], nlohmann::json::array({"Truck"}));
  EXPECT_EQ(j["members"]["methods"],
            nlohmann::json::array({"Main.main", "Truck.computeResidualValue", "Truck.yearsSince"}));
  EXPECT_EQ(j["members"]["fields"], nlohmann::json::array({"Truck.amortizationRate", "Truck.purchaseDate",
                                                           "Truck.purchaseValue", "Truck.residualValue"}));
  EXPECT_EQ(text, slice_json(a.ir, slice(sdg, a.ir, resolve_criterion("Truck.residualValue@writes", a))));
}

TEST(Members, InstantiatedClassesCount) {
  auto a = moltest::analyze_fixture("dispatch.mol");
  Sdg sdg = build_full_sdg(a);
  auto r = slice(sdg, a.ir, resolve_criterion("Main.main:9#result", a));
  auto m = slice_members(a.ir, r.statements);
  EXPECT_EQ(m.classes, (std::set<std::string>{"Decompiler", "DisAssembler"}));
  EXPECT_FALSE(m.classes.count("Main"));
}
