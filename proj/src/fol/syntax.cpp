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

#include "arbac/fol/syntax.hpp"

#include <algorithm>
#include <set>

#include "arbac/errors.hpp"

namespace arbac {

Formula Formula::conj(std::vector<Formula> kids) {
  std::vector<Formula> flat;
  for (auto& k : kids) {
    switch (k.kind) {
      case Kind::kFalse:
        return falsity();
      case Kind::kTrue:
        break;
      case Kind::kAnd:
        for (auto& g : k.kids) flat.push_back(std::move(g));
        break;
      default:
        flat.push_back(std::move(k));
    }
  }
  if (flat.empty()) return truth();
  if (flat.size() == 1) return std::move(flat[0]);
  return Formula{Kind::kAnd, {}, std::move(flat)};
}

Formula Formula::disj(std::vector<Formula> kids) {
  std::vector<Formula> flat;
  for (auto& k : kids) {
    switch (k.kind) {
      case Kind::kTrue:
        return truth();
      case Kind::kFalse:
        break;
      case Kind::kOr:
        for (auto& g : k.kids) flat.push_back(std::move(g));
        break;
      default:
        flat.push_back(std::move(k));
    }
  }
  if (flat.empty()) return falsity();
  if (flat.size() == 1) return std::move(flat[0]);
  return Formula{Kind::kOr, {}, std::move(flat)};
}

Formula negate(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::kTrue:
      return Formula::falsity();
    case Formula::Kind::kFalse:
      return Formula::truth();
    case Formula::Kind::kLit:
      return Formula::literal(f.lit.negated());
    case Formula::Kind::kAnd: {
      std::vector<Formula> ks;
      for (const auto& k : f.kids) ks.push_back(negate(k));
      return Formula::disj(std::move(ks));
    }
    case Formula::Kind::kOr: {
      std::vector<Formula> ks;
      for (const auto& k : f.kids) ks.push_back(negate(k));
      return Formula::conj(std::move(ks));
    }
  }
  return Formula::truth();
}

Formula cube_matrix(const Cube& c) {
  std::vector<Formula> ks;
  for (const auto& l : c.lits) ks.push_back(Formula::literal(l));
  return Formula::conj(std::move(ks));
}

namespace {

void add_vars(std::vector<Term>& out, const std::vector<Term>& vs) {
  for (const auto& v : vs) out.push_back(v);
}

void sort_unique(std::vector<Term>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

ForallFormula negate_exists(const ExistsFormula& f) {
  // The universal quantifier distributes over the conjunction, so cubes may
  // share variable names.
  ForallFormula out;
  std::vector<Formula> ks;
  for (const auto& c : f.cubes) {
    add_vars(out.vars, c.vars);
    ks.push_back(negate(cube_matrix(c)));
  }
  sort_unique(out.vars);
  out.matrix = Formula::conj(std::move(ks));
  return out;
}

std::vector<ForallFormula> negate_exists_clauses(const ExistsFormula& f) {
  std::vector<ForallFormula> out;
  for (const auto& c : f.cubes) {
    ForallFormula g;
    g.vars = c.vars;
    sort_unique(g.vars);
    g.matrix = negate(cube_matrix(c));
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<std::vector<Literal>> to_dnf(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::kTrue:
      return {{}};
    case Formula::Kind::kFalse:
      return {};
    case Formula::Kind::kLit:
      return {{f.lit}};
    case Formula::Kind::kOr: {
      std::vector<std::vector<Literal>> out;
      for (const auto& k : f.kids) {
        auto d = to_dnf(k);
        out.insert(out.end(), d.begin(), d.end());
      }
      return out;
    }
    case Formula::Kind::kAnd: {
      std::vector<std::vector<Literal>> acc{{}};
      for (const auto& k : f.kids) {
        auto d = to_dnf(k);
        std::vector<std::vector<Literal>> next;
        for (const auto& a : acc) {
          for (const auto& b : d) {
            auto m = a;
            m.insert(m.end(), b.begin(), b.end());
            next.push_back(std::move(m));
          }
        }
        acc = std::move(next);
        if (acc.empty()) break;
      }
      return acc;
    }
  }
  return {};
}

ExistsFormula negate_forall(const ForallFormula& f) {
  ExistsFormula out;
  for (auto& lits : to_dnf(negate(f.matrix))) {
    Cube c;
    c.vars = vars_of(lits);
    c.lits = std::move(lits);
    out.cubes.push_back(std::move(c));
  }
  return out;
}

void check_well_sorted(const Signature& sig, const Literal& l) {
  const auto& a = l.atom;
  for (const auto& t : a.args) {
    if (t.is_const()) {
      if (t.id < 0 || t.id >= sig.num_constants()) {
        throw UndeclaredConstant("constant id out of range");
      }
      if (sig.constant(t.id).sort != t.sort) {
        throw SortError("constant " + sig.constant(t.id).name +
                        " used at wrong sort");
      }
    }
  }
  if (a.pred == kEq) {
    if (a.args.size() != 2 || a.args[0].sort != a.args[1].sort) {
      throw SortError("ill-sorted equality");
    }
    return;
  }
  if (a.pred < 0 || a.pred >= sig.num_predicates()) {
    throw SortError("unknown predicate");
  }
  const auto& decl = sig.predicate(a.pred);
  if (decl.args.size() != a.args.size()) {
    throw SortError("arity mismatch for " + decl.name);
  }
  for (std::size_t i = 0; i < decl.args.size(); ++i) {
    if (decl.args[i] != a.args[i].sort) {
      throw SortError("argument sort mismatch for " + decl.name);
    }
  }
}

void check_well_sorted(const Signature& sig, const Cube& c) {
  std::set<Term> bound(c.vars.begin(), c.vars.end());
  for (const auto& l : c.lits) {
    check_well_sorted(sig, l);
    for (const auto& t : l.atom.args) {
      if (t.is_var() && !bound.count(t)) throw SortError("unbound variable");
    }
  }
}

void check_well_sorted(const Signature& sig, const Formula& f) {
  if (f.kind == Formula::Kind::kLit) check_well_sorted(sig, f.lit);
  for (const auto& k : f.kids) check_well_sorted(sig, k);
}

namespace {

void collect_vars(const Formula& f, std::vector<Term>& out) {
  if (f.kind == Formula::Kind::kLit) {
    for (const auto& t : f.lit.atom.args) {
      if (t.is_var()) out.push_back(t);
    }
  }
  for (const auto& k : f.kids) collect_vars(k, out);
}

}  // namespace

std::vector<Term> free_vars(const Formula& f) {
  std::vector<Term> out;
  collect_vars(f, out);
  sort_unique(out);
  return out;
}

std::vector<Term> vars_of(const std::vector<Literal>& lits) {
  std::vector<Term> out;
  for (const auto& l : lits) {
    for (const auto& t : l.atom.args) {
      if (t.is_var()) out.push_back(t);
    }
  }
  sort_unique(out);
  return out;
}

std::vector<int> max_var_ids(const std::vector<Term>& vars, int num_sorts) {
  std::vector<int> out(num_sorts, -1);
  for (const auto& v : vars) {
    if (v.is_var()) out[v.sort] = std::max(out[v.sort], v.id);
  }
  return out;
}

Term shift_term(const Term& t, const std::vector<int>& offset) {
  if (!t.is_var()) return t;
  return Term::var(t.sort, t.id + offset[t.sort]);
}

Literal shift_literal(const Literal& l, const std::vector<int>& offset) {
  Literal out = l;
  for (auto& t : out.atom.args) t = shift_term(t, offset);
  return out;
}

Formula shift_formula(const Formula& f, const std::vector<int>& offset) {
  Formula out = f;
  if (out.kind == Formula::Kind::kLit) out.lit = shift_literal(f.lit, offset);
  for (auto& k : out.kids) k = shift_formula(k, offset);
  return out;
}

Formula rename_predicate(const Formula& f, PredId from, PredId to) {
  Formula out = f;
  if (out.kind == Formula::Kind::kLit && out.lit.atom.pred == from) {
    out.lit.atom.pred = to;
  }
  for (auto& k : out.kids) k = rename_predicate(k, from, to);
  return out;
}

Cube rename_predicate(const Cube& c, PredId from, PredId to) {
  Cube out = c;
  for (auto& l : out.lits) {
    if (l.atom.pred == from) l.atom.pred = to;
  }
  return out;
}

void Substitution::bind(const Term& var, const Term& value) {
  for (auto& [k, v] : map_) {
    if (k == var) {
      v = value;
      return;
    }
  }
  map_.emplace_back(var, value);
}

const Term& Substitution::apply(const Term& t) const {
  if (!t.is_var()) return t;
  for (const auto& [k, v] : map_) {
    if (k == t) return v;
  }
  return t;
}

Literal Substitution::apply(const Literal& l) const {
  Literal out = l;
  for (auto& t : out.atom.args) t = apply(t);
  return out;
}

Formula Substitution::apply(const Formula& f) const {
  Formula out = f;
  if (out.kind == Formula::Kind::kLit) out.lit = apply(f.lit);
  for (auto& k : out.kids) k = apply(k);
  return out;
}

bool mentions_predicate(const Formula& f, PredId p) {
  if (f.kind == Formula::Kind::kLit) return f.lit.atom.pred == p;
  for (const auto& k : f.kids) {
    if (mentions_predicate(k, p)) return true;
  }
  return false;
}

bool mentions_predicate(const Cube& c, PredId p) {
  for (const auto& l : c.lits) {
    if (l.atom.pred == p) return true;
  }
  return false;
}

}  // namespace arbac
