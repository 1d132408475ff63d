// Copyright 2026 The arbac-reach Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arbac/policy/dsl.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arbac/errors.hpp"
#include "arbac/fol/sexpr.hpp"

namespace arbac {
namespace {

struct Statement {
  int line = 0;
  std::string keyword;
  std::vector<SExpr> args;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

std::vector<Statement> split_statements(const std::string& text) {
  std::vector<Statement> out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::string pending;
  int pending_line = 0;
  int depth = 0;
  auto flush = [&] {
    if (pending.empty()) return;
    std::vector<SExpr> xs;
    try {
      xs = parse_sexprs(pending);
    } catch (const ParseError& e) {
      fail(pending_line, e.what());
    }
    pending.clear();
    if (xs.empty()) return;
    if (!xs[0].is_atom) fail(pending_line, "statement must start with a keyword");
    Statement s;
    s.line = pending_line;
    s.keyword = xs[0].atom;
    s.args.assign(xs.begin() + 1, xs.end());
    out.push_back(std::move(s));
  };
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    if (depth == 0) {
      auto first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      // A line opening with '(' continues the previous statement.
      if (raw[first] != '(' || pending.empty()) {
        flush();
        pending_line = lineno;
      }
    }
    for (char c : raw) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
    }
    if (depth < 0) fail(lineno, "unbalanced ')'");
    pending += raw;
    pending += '\n';
  }
  if (depth != 0) fail(pending_line, "unbalanced '('");
  flush();
  return out;
}

const std::string& atom(const Statement& s, const SExpr& e, const char* what) {
  if (!e.is_atom) fail(s.line, std::string("expected ") + what);
  return e.atom;
}

RoleRef parse_role_ref(const Statement& s, const SExpr& e) {
  if (e.is_atom) return RoleRef{e.atom, false, {}};
  if (e.items.empty() || !e.items[0].is_atom) fail(s.line, "bad role reference");
  RoleRef r{e.items[0].atom, true, {}};
  for (size_t i = 1; i < e.items.size(); ++i)
    r.args.push_back(atom(s, e.items[i], "schema argument"));
  return r;
}

RoleExpr parse_role_expr(const Statement& s, const SExpr& e) {
  RoleExpr x;
  auto inner = [&]() -> const SExpr& {
    if (e.items.size() != 2) fail(s.line, "malformed precondition");
    return e.items[1];
  };
  if (e.head_is("not")) {
    x.negative = true;
    x.role = parse_role_ref(s, inner());
  } else if (e.head_is("not-implicit")) {
    x.negative = true;
    x.implicit_negative = true;
    x.role = parse_role_ref(s, inner());
  } else if (e.head_is("explicit")) {
    x.explicit_membership = true;
    x.role = parse_role_ref(s, inner());
  } else {
    x.role = parse_role_ref(s, e);
  }
  return x;
}

std::vector<NamePair> parse_binders(const Statement& s, const SExpr& clause) {
  std::vector<NamePair> out;
  for (size_t i = 1; i < clause.items.size(); ++i) {
    const SExpr& b = clause.items[i];
    if (!b.is_list() || b.items.size() != 2 || !b.items[0].is_atom ||
        !b.items[1].is_atom)
      fail(s.line, "binder must be (name Sort)");
    out.emplace_back(b.items[0].atom, b.items[1].atom);
  }
  return out;
}

const SExpr& single_arg(const Statement& s, const SExpr& clause) {
  if (clause.items.size() != 2) fail(s.line, "clause takes one argument");
  return clause.items[1];
}

RuleDecl parse_rule(const Statement& s, RuleDecl::Kind kind) {
  RuleDecl r;
  r.kind = kind;
  size_t i = 0;
  if (!s.args.empty() && s.args[0].is_atom) r.label = s.args[i++].atom;
  bool have_target = false;
  for (; i < s.args.size(); ++i) {
    const SExpr& c = s.args[i];
    if (!c.is_list() || c.items.empty() || !c.items[0].is_atom)
      fail(s.line, "expected rule clause");
    const std::string& head = c.items[0].atom;
    if (head == "admin") {
      r.admin = parse_role_ref(s, single_arg(s, c));
    } else if (head == "target") {
      r.target = parse_role_ref(s, single_arg(s, c));
      have_target = true;
    } else if (head == "vars") {
      auto b = parse_binders(s, c);
      r.vars.insert(r.vars.end(), b.begin(), b.end());
    } else if (head == "pre" && kind == RuleDecl::Kind::kAssign) {
      for (size_t j = 1; j < c.items.size(); ++j)
        r.pre.push_back(parse_role_expr(s, c.items[j]));
    } else if (head == "trusted" && kind == RuleDecl::Kind::kAssign) {
      for (size_t j = 1; j < c.items.size(); ++j)
        r.trusted.push_back(atom(s, c.items[j], "user name"));
    } else {
      fail(s.line, "unknown rule clause '" + head + "'");
    }
  }
  if (!have_target) fail(s.line, "rule needs a (target ...) clause");
  return r;
}

GoalDecl parse_goal(const Statement& s) {
  GoalDecl g;
  for (const SExpr& c : s.args) {
    if (c.head_is("user")) {
      const std::string& u = atom(s, single_arg(s, c), "user");
      if (u == "*") {
        g.mode = GoalDecl::UserMode::kShared;
      } else if (u == "distinct") {
        g.mode = GoalDecl::UserMode::kDistinct;
      } else {
        g.mode = GoalDecl::UserMode::kNamed;
        g.user = u;
      }
    } else if (c.head_is("pair")) {
      if (c.items.size() < 2 || c.items.size() > 3)
        fail(s.line, "pair takes a role and an optional permission");
      GoalPair p;
      const SExpr& r = c.items[1];
      if ((r.head_is(">=") || r.head_is("=")) && r.items.size() == 2) {
        p.cmp = r.head_is(">=") ? GoalPair::Cmp::kGeq : GoalPair::Cmp::kEq;
        p.role = parse_role_ref(s, r.items[1]);
      } else {
        p.role = parse_role_ref(s, r);
      }
      if (c.items.size() == 3) p.perm = atom(s, c.items[2], "permission");
      g.pairs.push_back(std::move(p));
    } else {
      fail(s.line, "unknown goal clause");
    }
  }
  if (g.pairs.empty()) fail(s.line, "goal needs at least one pair");
  return g;
}

NamePair two_atoms(const Statement& s) {
  if (s.args.size() != 2) fail(s.line, s.keyword + " takes two names");
  return {atom(s, s.args[0], "name"), atom(s, s.args[1], "name")};
}

std::string one_formula(const Statement& s) {
  if (s.args.size() != 1) fail(s.line, s.keyword + " takes one formula");
  return to_string(s.args[0]);
}

}  // namespace

PolicyDecls parse_policy(const std::string& text) {
  PolicyDecls d;
  for (const Statement& s : split_statements(text)) {
    const std::string& k = s.keyword;
    if (k == "sort") {
      if (s.args.size() < 2) fail(s.line, "sort needs a name and sv|open");
      SortSpec sp;
      sp.name = atom(s, s.args[0], "sort name");
      const std::string& mode = atom(s, s.args[1], "sv|open");
      if (mode != "sv" && mode != "open") fail(s.line, "expected sv or open");
      sp.scalar = mode == "sv";
      for (size_t i = 2; i < s.args.size(); ++i)
        sp.values.push_back(atom(s, s.args[i], "constant"));
      d.sorts.push_back(std::move(sp));
    } else if (k == "hierarchy") {
      d.hierarchy.push_back(two_atoms(s));
    } else if (k == "pa") {
      d.pa.push_back(two_atoms(s));
      d.pa_declared = true;
    } else if (k == "pa_empty") {
      d.pa_declared = true;
    } else if (k == "init") {
      d.init.push_back(two_atoms(s));
    } else if (k == "init_formula") {
      d.init_formula = one_formula(s);
    } else if (k == "smer") {
      d.smer.push_back(two_atoms(s));
    } else if (k == "constraint") {
      d.constraints.push_back(one_formula(s));
    } else if (k == "axiom") {
      d.axioms.push_back(one_formula(s));
    } else if (k == "schema") {
      if (s.args.empty()) fail(s.line, "schema needs a name");
      SchemaDecl sc;
      sc.name = atom(s, s.args[0], "schema name");
      SExpr fake = SExpr::make_list({SExpr::make_atom("params")});
      fake.items.insert(fake.items.end(), s.args.begin() + 1, s.args.end());
      sc.params = parse_binders(s, fake);
      d.schemas.push_back(std::move(sc));
    } else if (k == "schema_link") {
      d.schema_links.push_back(two_atoms(s));
    } else if (k == "schema_senior") {
      d.schema_seniority.push_back(two_atoms(s));
    } else if (k == "can_assign") {
      d.rules.push_back(parse_rule(s, RuleDecl::Kind::kAssign));
    } else if (k == "can_revoke") {
      d.rules.push_back(parse_rule(s, RuleDecl::Kind::kRevoke));
    } else if (k == "goal") {
      if (d.goal) fail(s.line, "duplicate goal");
      d.goal = parse_goal(s);
    } else {
      fail(s.line, "unknown keyword '" + k + "'");
    }
  }
  if (d.init_formula && !d.init.empty())
    throw ParseError("init facts and init_formula are exclusive");
  return d;
}

namespace {

std::string ref_text(const RoleRef& r) {
  if (!r.schema) return r.name;
  std::string s = "(" + r.name;
  for (const auto& a : r.args) s += " " + a;
  return s + ")";
}

std::string expr_text(const RoleExpr& e) {
  if (e.implicit_negative) return "(not-implicit " + ref_text(e.role) + ")";
  if (e.negative) return "(not " + ref_text(e.role) + ")";
  if (e.explicit_membership) return "(explicit " + ref_text(e.role) + ")";
  return ref_text(e.role);
}

std::string binders_text(const std::vector<NamePair>& v) {
  std::string s;
  for (const auto& [n, t] : v) s += " (" + n + " " + t + ")";
  return s;
}

}  // namespace

std::string serialize_policy(const PolicyDecls& d) {
  std::ostringstream o;
  for (const auto& s : d.sorts) {
    o << "sort " << s.name << (s.scalar ? " sv" : " open");
    for (const auto& v : s.values) o << ' ' << v;
    o << '\n';
  }
  for (const auto& [a, b] : d.hierarchy) o << "hierarchy " << a << ' ' << b << '\n';
  for (const auto& [a, b] : d.pa) o << "pa " << a << ' ' << b << '\n';
  if (d.pa_declared && d.pa.empty()) o << "pa_empty\n";
  for (const auto& [a, b] : d.init) o << "init " << a << ' ' << b << '\n';
  if (d.init_formula) o << "init_formula " << *d.init_formula << '\n';
  for (const auto& [a, b] : d.smer) o << "smer " << a << ' ' << b << '\n';
  for (const auto& c : d.constraints) o << "constraint " << c << '\n';
  for (const auto& c : d.axioms) o << "axiom " << c << '\n';
  for (const auto& s : d.schemas) o << "schema " << s.name << binders_text(s.params) << '\n';
  for (const auto& [a, b] : d.schema_links) o << "schema_link " << a << ' ' << b << '\n';
  for (const auto& [a, b] : d.schema_seniority)
    o << "schema_senior " << a << ' ' << b << '\n';
  for (const auto& r : d.rules) {
    bool assign = r.kind == RuleDecl::Kind::kAssign;
    o << (assign ? "can_assign" : "can_revoke");
    if (!r.label.empty()) o << ' ' << r.label;
    if (r.admin) o << " (admin " << ref_text(*r.admin) << ')';
    if (!r.pre.empty()) {
      o << " (pre";
      for (const auto& e : r.pre) o << ' ' << expr_text(e);
      o << ')';
    }
    o << " (target " << ref_text(r.target) << ')';
    if (!r.trusted.empty()) {
      o << " (trusted";
      for (const auto& t : r.trusted) o << ' ' << t;
      o << ')';
    }
    if (!r.vars.empty()) o << " (vars" << binders_text(r.vars) << ')';
    o << '\n';
  }
  if (d.goal) {
    const GoalDecl& g = *d.goal;
    o << "goal";
    switch (g.mode) {
      case GoalDecl::UserMode::kNamed: o << " (user " << g.user << ')'; break;
      case GoalDecl::UserMode::kShared: o << " (user *)"; break;
      case GoalDecl::UserMode::kDistinct: o << " (user distinct)"; break;
    }
    for (const auto& p : g.pairs) {
      o << " (pair (" << (p.cmp == GoalPair::Cmp::kGeq ? ">= " : "= ")
        << ref_text(p.role) << ')';
      if (p.perm) o << ' ' << *p.perm;
      o << ')';
    }
    o << '\n';
  }
  return o.str();
}

// JSON mirror.

namespace {

using nlohmann::json;

json pairs_json(const std::vector<NamePair>& v) {
  json a = json::array();
  for (const auto& [x, y] : v) a.push_back({x, y});
  return a;
}

std::vector<NamePair> pairs_from(const json& j, const char* key) {
  std::vector<NamePair> out;
  if (!j.contains(key)) return out;
  for (const auto& p : j.at(key)) {
    if (!p.is_array() || p.size() != 2) throw ParseError(std::string(key) + ": expected pairs");
    out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

json ref_json(const RoleRef& r) {
  if (!r.schema) return r.name;
  return json{{"schema", r.name}, {"args", r.args}};
}

RoleRef ref_from(const json& j) {
  if (j.is_string()) return RoleRef{j.get<std::string>(), false, {}};
  return RoleRef{j.at("schema").get<std::string>(), true,
                 j.value("args", std::vector<std::string>{})};
}

std::vector<std::string> strings_from(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<std::string>>();
}

}  // namespace

std::string policy_to_json(const PolicyDecls& d) {
  json j;
  json sorts = json::array();
  for (const auto& s : d.sorts)
    sorts.push_back({{"name", s.name}, {"scalar", s.scalar}, {"values", s.values}});
  j["sorts"] = sorts;
  j["hierarchy"] = pairs_json(d.hierarchy);
  j["pa"] = pairs_json(d.pa);
  j["pa_declared"] = d.pa_declared;
  j["init"] = pairs_json(d.init);
  if (d.init_formula) j["init_formula"] = *d.init_formula;
  j["smer"] = pairs_json(d.smer);
  j["constraints"] = d.constraints;
  j["axioms"] = d.axioms;
  json schemas = json::array();
  for (const auto& s : d.schemas)
    schemas.push_back({{"name", s.name}, {"params", pairs_json(s.params)}});
  j["schemas"] = schemas;
  j["schema_links"] = pairs_json(d.schema_links);
  j["schema_seniority"] = pairs_json(d.schema_seniority);
  json rules = json::array();
  for (const auto& r : d.rules) {
    json x;
    x["kind"] = r.kind == RuleDecl::Kind::kAssign ? "assign" : "revoke";
    if (!r.label.empty()) x["label"] = r.label;
    if (r.admin) x["admin"] = ref_json(*r.admin);
    json pre = json::array();
    for (const auto& e : r.pre) {
      json p{{"role", ref_json(e.role)}};
      if (e.negative) p["negative"] = true;
      if (e.explicit_membership) p["explicit"] = true;
      if (e.implicit_negative) p["implicit_negative"] = true;
      pre.push_back(p);
    }
    if (!pre.empty()) x["pre"] = pre;
    x["target"] = ref_json(r.target);
    if (!r.trusted.empty()) x["trusted"] = r.trusted;
    if (!r.vars.empty()) x["vars"] = pairs_json(r.vars);
    rules.push_back(x);
  }
  j["rules"] = rules;
  if (d.goal) {
    json g;
    const char* modes[] = {"named", "shared", "distinct"};
    g["mode"] = modes[static_cast<int>(d.goal->mode)];
    if (d.goal->mode == GoalDecl::UserMode::kNamed) g["user"] = d.goal->user;
    json ps = json::array();
    for (const auto& p : d.goal->pairs) {
      json x{{"role", ref_json(p.role)},
             {"cmp", p.cmp == GoalPair::Cmp::kGeq ? ">=" : "="}};
      if (p.perm) x["perm"] = *p.perm;
      ps.push_back(x);
    }
    g["pairs"] = ps;
    j["goal"] = g;
  }
  return j.dump(2) + "\n";
}

PolicyDecls parse_policy_json(const std::string& text) {
  PolicyDecls d;
  try {
    json j = json::parse(text);
    for (const auto& s : j.value("sorts", json::array()))
      d.sorts.push_back(SortSpec{s.at("name").get<std::string>(), s.value("scalar", false),
                                 strings_from(s, "values")});
    d.hierarchy = pairs_from(j, "hierarchy");
    d.pa = pairs_from(j, "pa");
    d.pa_declared = j.value("pa_declared", !d.pa.empty());
    d.init = pairs_from(j, "init");
    if (j.contains("init_formula")) d.init_formula = j.at("init_formula").get<std::string>();
    d.smer = pairs_from(j, "smer");
    d.constraints = strings_from(j, "constraints");
    d.axioms = strings_from(j, "axioms");
    for (const auto& s : j.value("schemas", json::array()))
      d.schemas.push_back(SchemaDecl{s.at("name").get<std::string>(), pairs_from(s, "params")});
    d.schema_links = pairs_from(j, "schema_links");
    d.schema_seniority = pairs_from(j, "schema_seniority");
    for (const auto& x : j.value("rules", json::array())) {
      RuleDecl r;
      std::string kind = x.at("kind").get<std::string>();
      if (kind != "assign" && kind != "revoke") throw ParseError("bad rule kind " + kind);
      r.kind = kind == "assign" ? RuleDecl::Kind::kAssign : RuleDecl::Kind::kRevoke;
      r.label = x.value("label", "");
      if (x.contains("admin")) r.admin = ref_from(x.at("admin"));
      for (const auto& p : x.value("pre", json::array())) {
        RoleExpr e;
        e.role = ref_from(p.at("role"));
        e.negative = p.value("negative", false);
        e.explicit_membership = p.value("explicit", false);
        e.implicit_negative = p.value("implicit_negative", false);
        if (e.implicit_negative) e.negative = true;
        r.pre.push_back(e);
      }
      r.target = ref_from(x.at("target"));
      r.trusted = strings_from(x, "trusted");
      r.vars = pairs_from(x, "vars");
      d.rules.push_back(std::move(r));
    }
    if (j.contains("goal")) {
      const json& g = j.at("goal");
      GoalDecl gd;
      std::string mode = g.value("mode", "distinct");
      if (mode == "named") {
        gd.mode = GoalDecl::UserMode::kNamed;
        gd.user = g.at("user").get<std::string>();
      } else if (mode == "shared") {
        gd.mode = GoalDecl::UserMode::kShared;
      } else if (mode != "distinct") {
        throw ParseError("bad goal mode " + mode);
      }
      for (const auto& p : g.at("pairs")) {
        GoalPair gp;
        gp.role = ref_from(p.at("role"));
        gp.cmp = p.value("cmp", "=") == ">=" ? GoalPair::Cmp::kGeq : GoalPair::Cmp::kEq;
        if (p.contains("perm")) gp.perm = p.at("perm").get<std::string>();
        gd.pairs.push_back(gp);
      }
      d.goal = gd;
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  return d;
}

PolicyDecls parse_policy_any(const std::string& text) {
  auto p = text.find_first_not_of(" \t\r\n");
  if (p != std::string::npos && text[p] == '{') return parse_policy_json(text);
  return parse_policy(text);
}

PolicyDecls load_policy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_policy_any(ss.str());
}

}  // namespace arbac
