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

#include "arbac/fol/print.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "arbac/errors.hpp"

namespace arbac {

namespace {

std::string sort_prefix(const Signature& sig, SortId s) {
  switch (s) {
    case kUserSort:
      return "u";
    case kRoleSort:
      return "r";
    case kPermSort:
      return "p";
    default: {
      std::string n = sig.sort(s).name;
      for (auto& ch : n) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      return n + "_";
    }
  }
}

std::string var_decls(const Signature& sig, const std::vector<Term>& vars) {
  std::string out = "(";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ' ';
    out += "(" + var_name(sig, vars[i]) + " " + sig.sort(vars[i].sort).name + ")";
  }
  return out + ")";
}

}  // namespace

std::string var_name(const Signature& sig, const Term& v) {
  return sort_prefix(sig, v.sort) + std::to_string(v.id);
}

std::string to_string(const Signature& sig, const Term& t) {
  if (t.is_var()) return var_name(sig, t);
  return sig.constant(t.id).name;
}

std::string to_string(const Signature& sig, const Literal& l) {
  std::string a = "(" + sig.pred_name(l.atom.pred);
  for (const auto& t : l.atom.args) a += " " + to_string(sig, t);
  a += ")";
  if (l.positive) return a;
  return "(not " + a + ")";
}

std::string to_string(const Signature& sig, const Cube& c) {
  std::string body = "(and";
  for (const auto& l : c.lits) body += " " + to_string(sig, l);
  body += ")";
  if (c.vars.empty()) return body;
  return "(exists " + var_decls(sig, c.vars) + " " + body + ")";
}

std::string to_string(const Signature& sig, const ExistsFormula& f) {
  if (f.cubes.empty()) return "false";
  if (f.cubes.size() == 1) return to_string(sig, f.cubes[0]);
  std::string out = "(or";
  for (const auto& c : f.cubes) out += " " + to_string(sig, c);
  return out + ")";
}

std::string to_string(const Signature& sig, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::kTrue:
      return "true";
    case Formula::Kind::kFalse:
      return "false";
    case Formula::Kind::kLit:
      return to_string(sig, f.lit);
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      std::string out = f.kind == Formula::Kind::kAnd ? "(and" : "(or";
      for (const auto& k : f.kids) out += " " + to_string(sig, k);
      return out + ")";
    }
  }
  return "";
}

std::string to_string(const Signature& sig, const ForallFormula& f) {
  if (f.vars.empty()) return to_string(sig, f.matrix);
  return "(forall " + var_decls(sig, f.vars) + " " + to_string(sig, f.matrix) + ")";
}

namespace {

struct Scope {
  std::map<std::string, Term> vars;
  std::vector<Term> order;
};

Scope read_decls(const Signature& sig, const SExpr& e) {
  if (!e.is_list()) throw ParseError("expected variable declarations");
  Scope sc;
  std::vector<std::pair<std::string, SortId>> pending;
  std::map<SortId, std::set<int>> used;
  for (const auto& d : e.items) {
    if (!d.is_list() || d.items.size() != 2 || !d.items[0].is_atom ||
        !d.items[1].is_atom) {
      throw ParseError("bad variable declaration " + to_string(d));
    }
    auto s = sig.find_sort(d.items[1].atom);
    if (!s) throw ParseError("unknown sort " + d.items[1].atom);
    const std::string& name = d.items[0].atom;
    if (sc.vars.count(name)) throw ParseError("duplicate variable " + name);
    // Printed names keep their ids so that printing and parsing round-trip.
    std::string pre = sort_prefix(sig, *s);
    bool numbered = name.size() > pre.size() && name.compare(0, pre.size(), pre) == 0 &&
                    std::all_of(name.begin() + pre.size(), name.end(), [](char c) {
                      return std::isdigit(static_cast<unsigned char>(c));
                    });
    if (numbered) {
      int id = std::stoi(name.substr(pre.size()));
      if (used[*s].insert(id).second) {
        sc.vars[name] = Term::var(*s, id);
        sc.order.push_back(sc.vars[name]);
        continue;
      }
    }
    pending.emplace_back(name, *s);
    sc.vars[name] = Term::var(*s, -1);
    sc.order.push_back(sc.vars[name]);
  }
  for (auto& [name, s] : pending) {
    int id = 0;
    while (used[s].count(id)) ++id;
    used[s].insert(id);
    Term t = Term::var(s, id);
    for (auto& o : sc.order) {
      if (o == sc.vars[name]) {
        o = t;
        break;
      }
    }
    sc.vars[name] = t;
  }
  return sc;
}

Term read_term(const Signature& sig, const Scope& sc, const SExpr& e) {
  if (!e.is_atom) throw ParseError("expected a term, got " + to_string(e));
  auto v = sc.vars.find(e.atom);
  if (v != sc.vars.end()) return v->second;
  auto c = sig.find_constant(e.atom);
  if (!c) throw UndeclaredConstant("undeclared constant " + e.atom);
  return Term::constant(sig.constant(*c).sort, *c);
}

Formula read_body(const Signature& sig, const Scope& sc, const SExpr& e) {
  if (e.is("true")) return Formula::truth();
  if (e.is("false")) return Formula::falsity();
  if (!e.is_list() || e.items.empty() || !e.items[0].is_atom) {
    throw ParseError("expected a formula, got " + to_string(e));
  }
  const std::string& head = e.items[0].atom;
  std::vector<Formula> kids;
  auto sub = [&](std::size_t i) { return read_body(sig, sc, e.items.at(i)); };
  if (head == "and" || head == "or") {
    for (std::size_t i = 1; i < e.items.size(); ++i) kids.push_back(sub(i));
    return head == "and" ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
  }
  if (head == "not") {
    if (e.items.size() != 2) throw ParseError("not takes one argument");
    return negate(sub(1));
  }
  if (head == "=>") {
    if (e.items.size() != 3) throw ParseError("=> takes two arguments");
    return Formula::disj({negate(sub(1)), sub(2)});
  }
  if (head == "<=>") {
    if (e.items.size() != 3) throw ParseError("<=> takes two arguments");
    Formula a = sub(1), b = sub(2);
    return Formula::conj({Formula::disj({negate(a), b}), Formula::disj({a, negate(b)})});
  }
  if (head == "exists" || head == "forall") {
    throw ParseError("nested quantifiers are not supported");
  }
  std::vector<Term> args;
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    args.push_back(read_term(sig, sc, e.items[i]));
  }
  if (head == "distinct") {
    for (std::size_t i = 0; i < args.size(); ++i) {
      for (std::size_t j = i + 1; j < args.size(); ++j) {
        kids.push_back(Formula::literal(Literal::eq(args[i], args[j], false)));
      }
    }
    return Formula::conj(std::move(kids));
  }
  Literal l;
  if (head == "=") {
    if (args.size() != 2) throw ParseError("= takes two arguments");
    l = Literal::eq(args[0], args[1]);
  } else {
    auto p = sig.find_predicate(head);
    if (!p) throw ParseError("unknown predicate " + head);
    l = Literal::make(true, *p, std::move(args));
  }
  check_well_sorted(sig, l);
  return Formula::literal(std::move(l));
}

bool has_exists(const SExpr& e) {
  if (e.head_is("exists")) return true;
  if (e.head_is("or")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      if (has_exists(e.items[i])) return true;
    }
  }
  return false;
}

}  // namespace

ExistsFormula parse_exists(const Signature& sig, const SExpr& e) {
  ExistsFormula out;
  if (e.head_is("or") && has_exists(e)) {
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      auto sub = parse_exists(sig, e.items[i]);
      out.cubes.insert(out.cubes.end(), sub.cubes.begin(), sub.cubes.end());
    }
    return out;
  }
  Scope sc;
  const SExpr* body = &e;
  if (e.head_is("exists")) {
    if (e.items.size() != 3) throw ParseError("exists takes declarations and a body");
    sc = read_decls(sig, e.items[1]);
    body = &e.items[2];
  }
  Formula f = read_body(sig, sc, *body);
  std::vector<Term> vars = sc.order;
  std::sort(vars.begin(), vars.end());
  for (auto& lits : to_dnf(f)) out.cubes.push_back(Cube{vars, std::move(lits)});
  return out;
}

Cube parse_cube(const Signature& sig, const SExpr& e) {
  auto f = parse_exists(sig, e);
  if (f.cubes.size() != 1) throw ParseError("expected a single conjunction");
  return f.cubes[0];
}

ForallFormula parse_forall(const Signature& sig, const SExpr& e) {
  Scope sc;
  const SExpr* body = &e;
  if (e.head_is("forall")) {
    if (e.items.size() != 3) throw ParseError("forall takes declarations and a body");
    sc = read_decls(sig, e.items[1]);
    body = &e.items[2];
  }
  ForallFormula out;
  out.vars = sc.order;
  std::sort(out.vars.begin(), out.vars.end());
  out.matrix = read_body(sig, sc, *body);
  return out;
}

ExistsFormula parse_exists(const Signature& sig, const std::string& text) {
  return parse_exists(sig, parse_sexpr(text));
}

ForallFormula parse_forall(const Signature& sig, const std::string& text) {
  return parse_forall(sig, parse_sexpr(text));
}

}  // namespace arbac
