#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "mol/aspects/aspect.hpp"
#include "mol/lang/printer.hpp"
#include "mol/lang/source.hpp"

namespace mol::aspects {

namespace {

using ojson = nlohmann::ordered_json;

ojson to_json(const DiffReport &r) {
  ojson j;
  j["aspects"] = r.aspects;
  j["cells"] = ojson::array();
  for (const auto &c : r.cells) {
    ojson cell;
    cell["in"] = c.in;
    cell["classes"] = c.classes;
    cell["methods"] = c.methods;
    cell["fields"] = c.fields;
    cell["statements"] = c.statements;
    j["cells"].push_back(cell);
  }
  j["stats"] = ojson::array();
  for (const auto &s : r.stats)
    j["stats"].push_back({{"aspect", s.aspect},
                          {"sliced_classes", s.sliced_classes},
                          {"exclusive_classes", s.exclusive_classes},
                          {"methods", s.methods},
                          {"fields", s.fields},
                          {"statements", s.statements}});
  ojson cls;
  cls["shared"] = r.classification.shared;
  cls["multiply_defined"] = r.classification.multiply_defined;
  cls["exclusive"] = ojson::object();
  for (const auto &[aspect, members] : r.classification.exclusive)
    cls["exclusive"][aspect] = members;
  j["classification"] = cls;
  return j;
}

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

std::string join(const std::vector<std::string> &v, const std::string &sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? sep : "") + v[i];
  return out;
}

std::string class_of(const std::string &member) { return member.substr(0, member.find('.')); }

struct ClassView {
  std::vector<std::string> in;
  std::map<std::string, std::vector<std::string>> fields, methods;
  std::map<std::string, std::map<std::string, std::vector<std::string>>> statements; // method -> id -> in
};

const char *kStyle = R"(body{font-family:sans-serif;margin:2em;color:#222}
code{font-family:monospace}
.badge{display:inline-block;padding:0 .4em;margin-left:.4em;border-radius:.3em;background:#dde;font-size:.85em}
.cat-shared{background:#cfc}.cat-multiply_defined{background:#fd9}.cat-exclusive{background:#ccf}
section.class-view{border:1px solid #ccc;border-radius:.4em;padding:.5em 1em;margin:1em 0}
table{border-collapse:collapse}td,th{border:1px solid #ccc;padding:.2em .6em;text-align:right}
.hidden{display:none}
ol.stmts{font-family:monospace;font-size:.9em})";

const char *kScript = R"(function refresh(){
  var on={};
  document.querySelectorAll('#toggles input').forEach(function(b){on[b.dataset.aspect]=b.checked;});
  document.querySelectorAll('[data-in]').forEach(function(e){
    var show=e.dataset.in.split(' ').some(function(a){return on[a];});
    e.classList.toggle('hidden',!show);
  });
})";

std::string render_html(const DiffReport &r, const lang::ProgramIR *ir) {
  std::map<std::string, std::string> category;
  for (const auto &m : r.classification.shared)
    category[m] = "shared";
  for (const auto &m : r.classification.multiply_defined)
    category[m] = "multiply_defined";
  for (const auto &[_, members] : r.classification.exclusive)
    for (const auto &m : members)
      category[m] = "exclusive";

  std::map<std::string, ClassView> views;
  std::map<std::string, std::string> stmt_text;
  if (ir)
    for (const auto &ref : ir->all_stmts())
      stmt_text[ir->stmt_id(ref)] = lang::stmt_text(ir->stmt(ref));
  for (const auto &c : r.cells) {
    for (const auto &m : c.classes)
      views[m].in = c.in;
    for (const auto &m : c.fields)
      views[class_of(m)].fields[m] = c.in;
    for (const auto &m : c.methods)
      views[class_of(m)].methods[m] = c.in;
    for (const auto &id : c.statements)
      views[class_of(id)].statements[id.substr(0, id.find('#'))][id] = c.in;
  }

  std::ostringstream o;
  auto badge = [&](const std::vector<std::string> &in) {
    return "<span class=\"badge\">{" + escape(join(in, ", ")) + "}</span>";
  };
  auto data_in = [&](const std::vector<std::string> &in) { return " data-in=\"" + escape(join(in, " ")) + "\""; };
  auto cat_badge = [&](const std::string &m) {
    auto it = category.find(m);
    if (it == category.end())
      return std::string();
    return "<span class=\"badge cat-" + it->second + "\">" + it->second + "</span>";
  };

  o << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>Functional aspects</title>\n";
  o << "<style>\n" << kStyle << "\n</style>\n<script>\n" << kScript << "\n</script>\n</head>\n<body>\n";
  o << "<h1>Functional aspects</h1>\n<section id=\"toggles\">\n";
  for (const auto &a : r.aspects)
    o << "<label><input type=\"checkbox\" checked data-aspect=\"" << escape(a) << "\" onchange=\"refresh()\"> "
      << escape(a) << "</label>\n";
  o << "</section>\n<section id=\"legend\">\n<h2>Legend</h2>\n<ul>\n"
    << "<li><span class=\"badge cat-shared\">shared</span> included whole and identically in several aspects</li>\n"
    << "<li><span class=\"badge cat-multiply_defined\">multiply_defined</span> different statement subsets in several aspects</li>\n"
    << "<li><span class=\"badge cat-exclusive\">exclusive</span> belongs to one aspect only</li>\n"
    << "<li><span class=\"badge\">{a, b}</span> the aspects a member belongs to</li>\n</ul>\n</section>\n";

  o << "<section id=\"stats\">\n<h2>Statistics</h2>\n<table>\n<tr><th>aspect</th><th>sliced classes</th>"
    << "<th>exclusive classes</th><th>methods</th><th>fields</th><th>statements</th></tr>\n";
  for (const auto &s : r.stats)
    o << "<tr><th>" << escape(s.aspect) << "</th><td>" << s.sliced_classes << "</td><td>" << s.exclusive_classes
      << "</td><td>" << s.methods << "</td><td>" << s.fields << "</td><td>" << s.statements << "</td></tr>\n";
  o << "</table>\n</section>\n";

  for (const auto &[cls, view] : views) {
    o << "<section class=\"class-view\" id=\"class-" << escape(cls) << "\""
      << (view.in.empty() ? "" : data_in(view.in)) << ">\n<h2>class " << escape(cls)
      << (view.in.empty() ? "" : badge(view.in) + cat_badge(cls)) << "</h2>\n";
    if (!view.fields.empty()) {
      o << "<h3>Fields</h3>\n<ul>\n";
      for (const auto &[f, in] : view.fields)
        o << "<li" << data_in(in) << "><code>" << escape(f) << "</code>" << badge(in) << cat_badge(f) << "</li>\n";
      o << "</ul>\n";
    }
    if (!view.methods.empty()) {
      o << "<h3>Methods</h3>\n<ul>\n";
      for (const auto &[m, in] : view.methods) {
        o << "<li" << data_in(in) << "><code>" << escape(m) << "</code>" << badge(in) << cat_badge(m) << "\n";
        auto st = view.statements.find(m);
        if (st != view.statements.end()) {
          o << "<ol class=\"stmts\">\n";
          std::vector<std::pair<int, std::string>> ordered;
          for (const auto &[id, _] : st->second)
            ordered.push_back({std::stoi(id.substr(id.find('#') + 1)), id});
          std::sort(ordered.begin(), ordered.end());
          for (const auto &[_, id] : ordered) {
            const auto &sin = st->second.at(id);
            o << "<li" << data_in(sin) << "><code>" << escape(id);
            if (auto t = stmt_text.find(id); t != stmt_text.end())
              o << ": " << escape(t->second);
            o << "</code>" << badge(sin) << "</li>\n";
          }
          o << "</ol>\n";
        }
        o << "</li>\n";
      }
      o << "</ul>\n";
    }
    o << "</section>\n";
  }
  o << "</body>\n</html>\n";
  return o.str();
}

template <typename T>
T require(const nlohmann::json &j, const char *key) {
  if (!j.contains(key))
    throw AnalysisError(std::string("report: missing key '") + key + "'");
  return j.at(key).get<T>();
}

} // namespace

std::string render_report(const DiffReport &report, const std::string &format, const lang::ProgramIR *ir) {
  if (format == "json")
    return to_json(report).dump(2) + "\n";
  if (format == "html")
    return render_html(report, ir);
  throw AnalysisError("unknown report format '" + format + "'");
}

DiffReport parse_report(const std::string &json_text) {
  DiffReport r;
  try {
    auto j = nlohmann::json::parse(json_text);
    r.aspects = require<std::vector<std::string>>(j, "aspects");
    for (const auto &c : require<nlohmann::json>(j, "cells")) {
      Cell cell;
      cell.in = require<std::vector<std::string>>(c, "in");
      cell.classes = require<std::set<std::string>>(c, "classes");
      cell.methods = require<std::set<std::string>>(c, "methods");
      cell.fields = require<std::set<std::string>>(c, "fields");
      cell.statements = require<std::set<std::string>>(c, "statements");
      r.cells.push_back(std::move(cell));
    }
    for (const auto &s : require<nlohmann::json>(j, "stats"))
      r.stats.push_back({require<std::string>(s, "aspect"), require<std::size_t>(s, "sliced_classes"),
                         require<std::size_t>(s, "exclusive_classes"), require<std::size_t>(s, "methods"),
                         require<std::size_t>(s, "fields"), require<std::size_t>(s, "statements")});
    auto cls = require<nlohmann::json>(j, "classification");
    r.classification.shared = require<std::set<std::string>>(cls, "shared");
    r.classification.multiply_defined = require<std::set<std::string>>(cls, "multiply_defined");
    r.classification.exclusive = require<std::map<std::string, std::set<std::string>>>(cls, "exclusive");
  } catch (const nlohmann::json::exception &e) {
    throw AnalysisError(std::string("report: ") + e.what());
  }
  return r;
}

} // namespace mol::aspects
