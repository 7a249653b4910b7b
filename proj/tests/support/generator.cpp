#include "generator.hpp"

#include <set>
#include <sstream>

#include "mol/lang/ir.hpp"

namespace moltest {

namespace {

struct MethodSig {
  std::string name;
  bool returns = false;
  int arity = 0;
};

struct ClassPlan {
  std::string name;
  int parent = -1;
  std::vector<std::string> fields;
  std::vector<MethodSig> methods;
  std::vector<int> overrides; // indices into the parent's methods
};

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::string program() {
    plan();
    for (std::size_t c = 0; c < classes_.size(); ++c)
      emit_class(static_cast<int>(c));
    emit_main();
    return out_.str();
  }

private:
  std::mt19937_64 rng_;
  std::ostringstream out_;
  std::vector<ClassPlan> classes_;
  int loop_counter_ = 0;

  // Per-body state.
  std::vector<std::string> ints_;
  std::vector<std::string> bools_;
  std::vector<std::pair<std::string, int>> objects_; // local name, class index
  std::string self_fields_prefix_;
  int self_ = -1;
  std::vector<std::string> counters_;
  std::vector<int> callable_self_; // own methods this body may call on `this`
  bool in_int_method_ = false;

  int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return pick(100) < percent; }

  void plan() {
    int n = 2 + pick(2);
    static const char *pool[] = {"a", "b", "c", "size", "val"};
    for (int i = 0; i < n; ++i) {
      ClassPlan c;
      c.name = "K" + std::to_string(i);
      std::set<std::string> names;
      int nf = 1 + pick(3);
      while (static_cast<int>(names.size()) < nf)
        names.insert(pool[pick(5)]);
      c.fields.assign(names.begin(), names.end());
      int nm = 1 + pick(2);
      for (int m = 0; m < nm; ++m)
        c.methods.push_back({"m" + std::to_string(i) + std::to_string(m), chance(60), pick(3)});
      classes_.push_back(c);
    }
    // The second class may extend the first and override some of its methods.
    if (chance(60)) {
      auto &child = classes_[1];
      child.parent = 0;
      for (auto &f : child.fields)
        f = "x" + f; // avoid redeclaring inherited fields
      for (int m = 0; m < static_cast<int>(classes_[0].methods.size()); ++m)
        if (chance(70))
          child.overrides.push_back(m);
    }
  }

  std::vector<std::string> all_fields(int cls) const {
    std::vector<std::string> out;
    for (int c = cls; c >= 0; c = classes_[c].parent)
      out.insert(out.end(), classes_[c].fields.begin(), classes_[c].fields.end());
    return out;
  }

  std::string int_atom() {
    switch (pick(6)) {
    case 0:
      return std::to_string(pick(10));
    case 1:
    case 2:
      if (!ints_.empty())
        return ints_[pick(static_cast<int>(ints_.size()))];
      return std::to_string(pick(10));
    case 3:
      if (self_ >= 0) {
        auto fs = all_fields(self_);
        return "this." + fs[pick(static_cast<int>(fs.size()))];
      }
      [[fallthrough]];
    case 4:
      if (!objects_.empty()) {
        auto &[name, cls] = objects_[pick(static_cast<int>(objects_.size()))];
        auto fs = all_fields(cls);
        return name + "." + fs[pick(static_cast<int>(fs.size()))];
      }
      [[fallthrough]];
    default:
      return ints_.empty() ? "1" : ints_[pick(static_cast<int>(ints_.size()))];
    }
  }

  std::string int_expr(int depth = 0) {
    if (depth >= 2 || chance(40))
      return int_atom();
    switch (pick(6)) {
    case 0: return int_expr(depth + 1) + " + " + int_expr(depth + 1);
    case 1: return int_expr(depth + 1) + " - " + int_atom();
    case 2: return "(" + int_expr(depth + 1) + ") * " + std::to_string(1 + pick(3));
    case 3: return "(" + int_expr(depth + 1) + ") % " + std::to_string(2 + pick(7));
    case 4: return "(" + int_expr(depth + 1) + ") / " + std::to_string(1 + pick(4));
    default: return "-" + int_atom();
    }
  }

  std::string cond() {
    static const char *ops[] = {" < ", " <= ", " == ", " != "};
    std::string c = int_expr(1) + ops[pick(4)] + int_expr(1);
    if (!bools_.empty() && chance(25))
      c = bools_[pick(static_cast<int>(bools_.size()))] + (chance(50) ? " && " : " || ") + "(" + c + ")";
    if (chance(15))
      c = "!(" + c + ")";
    return c;
  }

  std::string args(int n) {
    std::string s;
    for (int i = 0; i < n; ++i)
      s += (i ? ", " : "") + int_expr(1);
    return s;
  }

  std::string call_expr(bool want_value) {
    std::vector<std::string> options;
    for (auto &[name, cls] : objects_)
      for (int c = cls; c >= 0; c = classes_[c].parent)
        for (auto &m : classes_[c].methods)
          if (m.returns || !want_value)
            options.push_back(name + "." + m.name + "(" + args(m.arity) + ")");
    if (self_ >= 0)
      for (int mi : callable_self_) {
        auto &m = classes_[self_].methods[mi];
        if (m.returns || !want_value)
          options.push_back("this." + m.name + "(" + args(m.arity) + ")");
      }
    if (options.empty())
      return "";
    return options[pick(static_cast<int>(options.size()))];
  }

  void line(int indent, const std::string &s) { out_ << std::string(indent * 2, ' ') << s << "\n"; }

  void statement(int indent, int depth, bool is_main) {
    int kind = pick(depth >= 2 ? 5 : 8);
    switch (kind) {
    case 0:
    case 1:
      if (!ints_.empty()) {
        line(indent, ints_[pick(static_cast<int>(ints_.size()))] + " = " + int_expr() + ";");
        return;
      }
      [[fallthrough]];
    case 2:
      if (self_ >= 0 && chance(60)) {
        auto fs = all_fields(self_);
        line(indent, "this." + fs[pick(static_cast<int>(fs.size()))] + " = " + int_expr() + ";");
        return;
      }
      if (!objects_.empty()) {
        auto &[name, cls] = objects_[pick(static_cast<int>(objects_.size()))];
        auto fs = all_fields(cls);
        line(indent, name + "." + fs[pick(static_cast<int>(fs.size()))] + " = " + int_expr() + ";");
        return;
      }
      line(indent, "print(" + int_expr() + ");");
      return;
    case 3: {
      auto c = call_expr(!ints_.empty() && chance(60));
      if (c.empty()) {
        line(indent, "print(" + int_expr() + ");");
      } else if (c.find("(") != std::string::npos && !ints_.empty() && returns_value(c)) {
        line(indent, ints_[pick(static_cast<int>(ints_.size()))] + " = " + c + ";");
      } else {
        line(indent, c + ";");
      }
      return;
    }
    case 4:
      if (is_main && !ints_.empty() && chance(50)) {
        line(indent, ints_[pick(static_cast<int>(ints_.size()))] + " = input(\"k" + std::to_string(pick(4)) + "\");");
        return;
      }
      if (!bools_.empty() && chance(50)) {
        line(indent, bools_[pick(static_cast<int>(bools_.size()))] + " = " + cond() + ";");
        return;
      }
      line(indent, "print(" + int_expr() + ");");
      return;
    case 5:
    case 6: {
      line(indent, "if (" + cond() + ") {");
      block(indent + 1, depth + 1, is_main);
      if (chance(50)) {
        line(indent, "} else {");
        block(indent + 1, depth + 1, is_main);
      }
      line(indent, "}");
      if (in_int_method_ && chance(10))
        line(indent, "if (" + cond() + ") { return " + int_expr() + "; }");
      return;
    }
    default: {
      if (counters_.empty())
        return statement(indent, depth + 1, is_main);
      auto ctr = counters_.back();
      counters_.pop_back();
      line(indent, ctr + " = 0;");
      line(indent, "while (" + ctr + " < " + std::to_string(1 + pick(4)) + ") {");
      block(indent + 1, depth + 1, is_main);
      line(indent + 1, ctr + " = " + ctr + " + 1;");
      line(indent, "}");
      return;
    }
    }
  }

  bool returns_value(const std::string &call) const {
    auto dot = call.find('.');
    auto paren = call.find('(');
    std::string name = call.substr(dot + 1, paren - dot - 1);
    for (auto &c : classes_)
      for (auto &m : c.methods)
        if (m.name == name)
          return m.returns;
    return false;
  }

  void block(int indent, int depth, bool is_main) {
    int n = depth == 0 ? 2 + pick(4) : 1 + pick(3);
    for (int i = 0; i < n; ++i)
      statement(indent, depth, is_main);
  }

  void prologue(int indent, int first_callee_class) {
    int nint = 1 + pick(3);
    for (int i = 0; i < nint; ++i) {
      std::string v = "v" + std::to_string(i);
      line(indent, "var int " + v + " = " + int_expr() + ";");
      ints_.push_back(v);
    }
    if (chance(40)) {
      line(indent, "var bool flag = " + cond() + ";");
      bools_.push_back("flag");
    }
    int loops = pick(3);
    for (int i = 0; i < loops; ++i) {
      std::string c = "i" + std::to_string(loop_counter_++);
      line(indent, "var int " + c + " = 0;");
      counters_.push_back(c);
    }
    for (int j = first_callee_class; j < static_cast<int>(classes_.size()); ++j) {
      if (!chance(60))
        continue;
      std::string o = "o" + std::to_string(j);
      int runtime = j;
      if (j == 0 && classes_.size() > 1 && classes_[1].parent == 0 && chance(50))
        runtime = 1;
      line(indent, "var " + classes_[j].name + " " + o + " = new " + classes_[runtime].name + ";");
      objects_.push_back({o, j});
    }
  }

  void reset_body() {
    ints_.clear();
    bools_.clear();
    objects_.clear();
    counters_.clear();
    callable_self_.clear();
    self_ = -1;
    in_int_method_ = false;
  }

  void method_body(int cls, const MethodSig &sig, int own_index, bool is_override) {
    reset_body();
    self_ = cls;
    in_int_method_ = sig.returns;
    for (int p = 0; p < sig.arity; ++p)
      ints_.push_back("p" + std::to_string(p));
    // Overrides never call through `this`, which keeps the call graph acyclic
    // under dynamic dispatch.
    if (!is_override)
      for (int i = 0; i < own_index; ++i)
        callable_self_.push_back(i);
    int first_callee = cls + 1;
    if (classes_[cls].parent == 0)
      first_callee = 2;
    if (cls == 0 && classes_.size() > 1 && classes_[1].parent == 0)
      first_callee = 2;
    prologue(2, first_callee);
    block(2, 0, false);
    if (sig.returns)
      line(2, "return " + int_expr() + ";");
  }

  std::string signature(const MethodSig &m) {
    std::string s = "method " + std::string(m.returns ? "int " : "void ") + m.name + "(";
    for (int p = 0; p < m.arity; ++p)
      s += (p ? ", " : "") + std::string("int p") + std::to_string(p);
    return s + ") {";
  }

  void emit_class(int c) {
    auto &cls = classes_[c];
    line(0, "class " + cls.name + (cls.parent >= 0 ? " extends " + classes_[cls.parent].name : "") + " {");
    for (auto &f : cls.fields)
      line(1, "field int " + f + ";");
    for (std::size_t m = 0; m < cls.methods.size(); ++m) {
      line(1, signature(cls.methods[m]));
      method_body(c, cls.methods[m], static_cast<int>(m), false);
      line(1, "}");
    }
    for (int m : cls.overrides) {
      const auto &sig = classes_[cls.parent].methods[m];
      line(1, signature(sig));
      method_body(c, sig, 0, true);
      line(1, "}");
    }
    line(0, "}");
  }

  void emit_main() {
    reset_body();
    line(0, "main {");
    int nint = 1 + pick(3);
    for (int i = 0; i < nint; ++i) {
      std::string v = "v" + std::to_string(i);
      line(1, "var int " + v + " = input(\"k" + std::to_string(i) + "\");");
      ints_.push_back(v);
    }
    line(1, "var int i0 = 0;");
    counters_.push_back("i0");
    for (int j = 0; j < static_cast<int>(classes_.size()); ++j) {
      std::string o = "o" + std::to_string(j);
      if (j == 0 && classes_.size() > 1 && classes_[1].parent == 0) {
        line(1, "var " + classes_[0].name + " " + o + " = null;");
        line(1, "if (" + ints_[0] + " < 3) { " + o + " = new " + classes_[1].name + "; } else { " + o + " = new " +
                    classes_[0].name + "; }");
      } else {
        line(1, "var " + classes_[j].name + " " + o + " = new " + classes_[j].name + ";");
      }
      objects_.push_back({o, j});
    }
    int n = 3 + pick(4);
    for (int i = 0; i < n; ++i)
      statement(1, 0, true);
    for (auto &[o, cls] : objects_) {
      auto fs = all_fields(cls);
      line(1, "print(" + o + "." + fs[pick(static_cast<int>(fs.size()))] + ");");
    }
    line(1, "print(" + ints_[pick(static_cast<int>(ints_.size()))] + ");");
    line(0, "}");
  }
};

} // namespace

std::string generate_program(std::uint64_t seed) { return Gen(seed).program(); }

std::string random_criterion(const mol::slicing::Analyses &a, std::mt19937_64 &rng) {
  std::vector<std::string> options;
  for (int m : a.cg.reachable) {
    const auto &method = a.ir.methods[m];
    for (int k = 0; k < static_cast<int>(method.stmts.size()); ++k) {
      const auto &s = method.stmts[k];
      if (s.removed)
        continue;
      std::set<std::string> vars;
      for (const auto &u : mol::lang::used_vars(s))
        vars.insert(u);
      if (!mol::lang::defined_var(s).empty())
        vars.insert(mol::lang::defined_var(s));
      vars.erase("this");
      for (const auto &v : vars)
        options.push_back(method.qualified() + ":" + std::to_string(k) + "#" + v);
    }
  }
  return options[rng() % options.size()];
}

} // namespace moltest
