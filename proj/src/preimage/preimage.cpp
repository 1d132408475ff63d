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

#include "arbac/preimage/preimage.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arbac/fol/canonical.hpp"

namespace arbac {
namespace {

bool scalar_const(const TheoryFacts* f, const Term& t) {
  return f && t.is_const() && f->is_scalar(t.sort);
}

// Equality as a branch literal: nullopt when trivially true, false-marker
// via ok=false when two distinct scalar constants are compared.
struct EqLit {
  bool ok = true;
  std::optional<Literal> lit;
};

EqLit make_eq(const Term& a, const Term& b, bool positive, const TheoryFacts* f) {
  if (a == b) return positive ? EqLit{true, {}} : EqLit{false, {}};
  if (scalar_const(f, a) && scalar_const(f, b))
    return positive ? EqLit{false, {}} : EqLit{true, {}};
  return EqLit{true, Literal::eq(a, b, positive)};
}

using Branch = std::vector<Literal>;

// Alternatives whose disjunction is equivalent to one post-state literal.
std::vector<Branch> rewrite_post(const Literal& l, const TransitionRule& t,
                                 const Term& subject, const Term& target,
                                 const TheoryFacts* f) {
  const Term& x = l.atom.args[0];
  const Term& y = l.atom.args[1];
  Literal pre = l;
  bool assign = t.kind == TransitionRule::Kind::kAssign;
  std::vector<Branch> out;
  // "hit" reads x = subject and y = target; "miss" reads its negation.
  bool hit_first = assign == l.positive;  // hit satisfies the literal
  if (hit_first) {
    EqLit a = make_eq(x, subject, true, f), b = make_eq(y, target, true, f);
    if (a.ok && b.ok) {
      Branch br;
      if (a.lit) br.push_back(*a.lit);
      if (b.lit) br.push_back(*b.lit);
      out.push_back(br);
    }
    out.push_back({pre});
  } else {
    for (int side = 0; side < 2; ++side) {
      EqLit d = side == 0 ? make_eq(x, subject, false, f) : make_eq(y, target, false, f);
      if (!d.ok) continue;
      Branch br;
      if (d.lit) br.push_back(*d.lit);
      br.push_back(pre);
      out.push_back(br);
      if (!d.lit) break;  // the disequality is valid; one branch covers it
    }
  }
  return out;
}

int sort_count(const Cube& k, const TransitionRule& t) {
  int n = 3;
  auto see = [&](const Term& x) { n = std::max(n, x.sort + 1); };
  for (const auto& v : k.vars) see(v);
  for (const auto& l : k.lits)
    for (const auto& a : l.atom.args) see(a);
  for (const auto& v : t.guard.vars) see(v);
  return n;
}

void prune_subsumed(std::vector<Cube>& cubes, std::vector<int>* tags) {
  std::vector<bool> dead(cubes.size(), false);
  std::vector<std::uint64_t> mask;
  mask.reserve(cubes.size());
  for (const auto& c : cubes) mask.push_back(feature_mask(c));
  for (size_t i = 0; i < cubes.size(); ++i) {
    if (dead[i]) continue;
    for (size_t j = 0; j < cubes.size(); ++j) {
      if (i == j || dead[j] || !may_subsume(mask[i], mask[j])) continue;
      if (subsumes(cubes[i], cubes[j])) dead[j] = true;
    }
  }
  size_t w = 0;
  for (size_t i = 0; i < cubes.size(); ++i) {
    if (dead[i]) continue;
    if (w != i) {
      cubes[w] = std::move(cubes[i]);
      if (tags) (*tags)[w] = (*tags)[i];
    }
    ++w;
  }
  cubes.resize(w);
  if (tags) tags->resize(w);
}

// Drops repeated cubes of an already canonical list, keeping first occurrences.
ExistsFormula dedupe(std::vector<Cube> cubes) {
  ExistsFormula out;
  std::set<Cube> seen;
  for (auto& c : cubes)
    if (seen.insert(c).second) out.cubes.push_back(std::move(c));
  return out;
}

std::vector<ConstId> seniors(const TheoryFacts& f, ConstId e) {
  std::vector<ConstId> out;
  for (const auto& [a, b] : f.geq)
    if (b == e) out.push_back(a);
  return out;
}

std::vector<ConstId> juniors(const TheoryFacts& f, ConstId e) {
  std::vector<ConstId> out;
  for (const auto& [a, b] : f.geq)
    if (a == e) out.push_back(b);
  return out;
}

// One rewriting pass. Returns false when the cube is unsatisfiable.
bool simplify_pass(std::vector<Literal>& lits, const TheoryFacts& f, bool& changed) {
  // Scalar sorts of size one: every variable is the single value.
  {
    Substitution sub;
    for (const auto& v : vars_of(lits))
      if (f.is_scalar(v.sort) && f.scalar_values[v.sort].size() == 1)
        sub.bind(v, Term::constant(v.sort, f.scalar_values[v.sort][0]));
    if (!sub.empty()) {
      for (auto& l : lits) l = sub.apply(l);
      changed = true;
    }
  }

  // Equality propagation by union-find.
  std::map<Term, Term> parent;
  auto find = [&](Term t) {
    while (true) {
      auto it = parent.find(t);
      if (it == parent.end() || it->second == t) return t;
      t = it->second;
    }
  };
  auto better = [](const Term& a, const Term& b) {
    if (a.is_const() != b.is_const()) return a.is_const();
    return a < b;
  };
  std::vector<Literal> rest;
  bool any_eq = false;
  for (auto& l : lits) {
    if (l.is_eq() && l.positive) {
      Term a = find(l.atom.args[0]), b = find(l.atom.args[1]);
      any_eq = true;
      if (a == b) {
        changed = true;
        continue;
      }
      if (a.is_const() && b.is_const()) {
        if (f.is_scalar(a.sort)) return false;
      }
      if (better(b, a)) std::swap(a, b);
      parent[b] = a;
      parent.emplace(a, a);
    } else {
      rest.push_back(std::move(l));
    }
  }
  std::vector<Literal> eqs;
  if (any_eq) {
    // Keep the equations between constants of open sorts.
    std::map<Term, std::vector<Term>> classes;
    for (const auto& [t, p] : parent) classes[find(t)].push_back(t);
    Substitution sub;
    for (const auto& [rep, members] : classes) {
      for (const Term& m : members) {
        if (m == rep) continue;
        if (m.is_var()) {
          sub.bind(m, rep);
        } else {
          eqs.push_back(Literal::eq(rep, m));
        }
      }
    }
    if (!sub.empty()) {
      changed = true;
      for (auto& l : rest) l = sub.apply(l);
    }
  }

  bool role_scalar = f.is_scalar(kRoleSort);
  bool geq_exact = f.hierarchy_complete && role_scalar;
  std::vector<Literal> out = std::move(eqs);
  out.reserve(out.size() + rest.size());
  for (Literal& l : rest) {
    const auto& a = l.atom.args;
    if (l.is_eq()) {  // negative
      if (a[0] == a[1]) return false;
      if (a[0].is_const() && a[1].is_const() && f.is_scalar(a[0].sort)) {
        changed = true;
        continue;
      }
      out.push_back(std::move(l));
      continue;
    }
    if (l.atom.pred == kGeq) {
      if (a[0] == a[1]) {
        if (!l.positive) return false;
        changed = true;
        continue;
      }
      if (a[0].is_const() && a[1].is_const()) {
        bool in = f.geq.count({a[0].id, a[1].id}) > 0;
        if (in || geq_exact) {
          if (in != l.positive) return false;
          changed = true;
          continue;
        }
      }
      if (geq_exact && a[0].is_var() != a[1].is_var()) {
        bool var_senior = a[0].is_var();
        const Term& x = var_senior ? a[0] : a[1];
        ConstId e = var_senior ? a[1].id : a[0].id;
        std::vector<ConstId> rel = var_senior ? seniors(f, e) : juniors(f, e);
        if (l.positive && rel.size() == 1) {
          out.push_back(Literal::eq(x, Term::constant(kRoleSort, rel[0])));
          changed = true;
          continue;
        }
        if (!l.positive) {
          for (ConstId c : rel) out.push_back(Literal::eq(x, Term::constant(kRoleSort, c), false));
          changed = true;
          continue;
        }
      }
      out.push_back(std::move(l));
      continue;
    }
    if (l.atom.pred == kPa && f.pa_complete) {
      bool ps = f.is_scalar(kPermSort);
      if (a[0].is_const() && a[1].is_const() && ps && role_scalar) {
        if ((f.pa.count({a[0].id, a[1].id}) > 0) != l.positive) return false;
        changed = true;
        continue;
      }
      // Fix one side by a scalar constant; the partners are listed.
      bool by_perm = a[0].is_const() && ps && a[1].is_var();
      bool by_role = a[1].is_const() && role_scalar && a[0].is_var();
      if (by_perm || by_role) {
        std::vector<Term> partners;
        for (const auto& [p, r] : f.pa) {
          if (by_perm && p == a[0].id) partners.push_back(Term::constant(kRoleSort, r));
          if (by_role && r == a[1].id) partners.push_back(Term::constant(kPermSort, p));
        }
        const Term& x = by_perm ? a[1] : a[0];
        if (l.positive && partners.empty()) return false;
        if (l.positive && partners.size() == 1) {
          out.push_back(Literal::eq(x, partners[0]));
          changed = true;
          continue;
        }
        if (!l.positive) {
          for (const Term& p : partners) out.push_back(Literal::eq(x, p, false));
          changed = true;
          continue;
        }
      }
    }
    out.push_back(std::move(l));
  }

  for (auto& l : out) l = normalize_eq(l);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (const auto& l : out)
    if (l.positive && std::binary_search(out.begin(), out.end(), l.negated())) return false;

  // A scalar variable excluded from all values but one equals that value.
  std::map<Term, std::set<ConstId>> excluded;
  for (const auto& l : out) {
    if (!l.is_eq() || l.positive) continue;
    const auto& a = l.atom.args;
    for (int s = 0; s < 2; ++s)
      if (a[s].is_var() && a[1 - s].is_const() && f.is_scalar(a[s].sort))
        excluded[a[s]].insert(a[1 - s].id);
  }
  for (const auto& [v, ex] : excluded) {
    const auto& vals = f.scalar_values[v.sort];
    size_t left = 0;
    ConstId last = -1;
    for (ConstId c : vals)
      if (!ex.count(c)) ++left, last = c;
    if (left == 0) return false;
    if (left == 1) {
      out.push_back(Literal::eq(v, Term::constant(v.sort, last)));
      changed = true;
    }
  }
  lits = std::move(out);
  return true;
}

}  // namespace

namespace {

// Simplified, sorted literals without the final canonical renaming.
bool simplify_lits(std::vector<Literal>& lits, const TheoryFacts& facts) {
  for (int round = 0; round < 64; ++round) {
    bool changed = false;
    if (!simplify_pass(lits, facts, changed)) return false;
    if (!changed) break;
  }
  return true;
}

}  // namespace

std::optional<Cube> simplify_cube(const Cube& c, const TheoryFacts& facts) {
  std::vector<Literal> lits = c.lits;
  if (!simplify_lits(lits, facts)) return std::nullopt;
  return canonicalize(Cube{vars_of(lits), lits});
}

ExistsFormula simplify(const ExistsFormula& k, const TheoryFacts& facts) {
  std::vector<Cube> cubes;
  for (const auto& c : k.cubes)
    if (auto s = simplify_cube(c, facts)) cubes.push_back(std::move(*s));
  ExistsFormula out = canonicalize(ExistsFormula{std::move(cubes)});
  prune_subsumed(out.cubes, nullptr);
  return out;
}

ExistsFormula pre_image(const TransitionRule& t, const Cube& k, const TheoryFacts* facts) {
  int ns = sort_count(k, t);
  std::vector<Term> kvars = k.vars;
  for (const auto& v : vars_of(k.lits)) kvars.push_back(v);
  std::vector<int> offset = max_var_ids(kvars, ns);
  for (auto& o : offset) ++o;

  std::vector<Literal> guard;
  for (const auto& l : t.guard.lits) guard.push_back(shift_literal(l, offset));
  Term subject = shift_term(t.subject, offset);
  Term target = shift_term(t.target, offset);

  std::vector<Branch> branches{{}};
  for (const auto& l : k.lits) {
    if (l.atom.pred != kUa) {
      for (auto& b : branches) b.push_back(l);
      continue;
    }
    std::vector<Branch> alts = rewrite_post(l, t, subject, target, facts);
    std::vector<Branch> next;
    next.reserve(branches.size() * alts.size());
    for (const auto& b : branches)
      for (const auto& a : alts) {
        Branch nb = b;
        nb.insert(nb.end(), a.begin(), a.end());
        next.push_back(std::move(nb));
      }
    branches = std::move(next);
  }

  std::vector<Cube> cubes;
  // Many branches coincide once equalities are substituted; canonicalize each
  // distinct simplified literal set once.
  std::set<std::vector<Literal>> simplified;
  for (auto& b : branches) {
    b.insert(b.end(), guard.begin(), guard.end());
    if (facts) {
      if (!simplify_lits(b, *facts)) continue;
      if (!simplified.insert(b).second) continue;
      cubes.push_back(canonicalize(Cube{vars_of(b), b}));
    } else {
      Cube c{vars_of(b), b};
      // Still drop immediate contradictions l and not l.
      Cube cc = canonicalize(c);
      bool contra = false;
      for (const auto& l : cc.lits) {
        if (l.positive && std::binary_search(cc.lits.begin(), cc.lits.end(), l.negated()))
          contra = true;
        if (l.is_eq() && !l.positive && l.atom.args[0] == l.atom.args[1]) contra = true;
      }
      if (!contra) cubes.push_back(std::move(cc));
    }
  }
  ExistsFormula out = dedupe(std::move(cubes));
  if (facts) prune_subsumed(out.cubes, nullptr);
  return out;
}

ExistsFormula pre_image(const TransitionRule& t, const ExistsFormula& k, const TheoryFacts* facts) {
  std::vector<Cube> cubes;
  for (const auto& c : k.cubes) {
    ExistsFormula p = pre_image(t, c, facts);
    cubes.insert(cubes.end(), p.cubes.begin(), p.cubes.end());
  }
  ExistsFormula out = dedupe(std::move(cubes));
  if (facts) prune_subsumed(out.cubes, nullptr);
  return out;
}

LabeledPreImage pre_image_all(const std::vector<TransitionRule>& ts, const ExistsFormula& k,
                              const TheoryFacts* facts) {
  LabeledPreImage out;
  std::set<Cube> seen;
  for (size_t i = 0; i < ts.size(); ++i) {
    for (auto& c : pre_image(ts[i], k, facts).cubes) {
      if (!seen.insert(c).second) continue;
      out.formula.cubes.push_back(std::move(c));
      out.rule.push_back(static_cast<int>(i));
    }
  }
  if (facts) prune_subsumed(out.formula.cubes, &out.rule);
  return out;
}

ExistsFormula expand_closed(const ExistsFormula& k, const TheoryFacts& facts) {
  std::vector<Cube> cubes;
  for (const auto& c : k.cubes) {
    std::vector<Term> vs;
    for (const auto& v : vars_of(c.lits))
      if (facts.is_scalar(v.sort)) vs.push_back(v);
    std::vector<size_t> digit(vs.size(), 0);
    while (true) {
      Substitution sub;
      for (size_t i = 0; i < vs.size(); ++i)
        sub.bind(vs[i], Term::constant(vs[i].sort, facts.scalar_values[vs[i].sort][digit[i]]));
      std::vector<Literal> lits;
      for (const auto& l : c.lits) lits.push_back(sub.apply(l));
      if (auto s = simplify_cube(Cube{vars_of(lits), lits}, facts)) cubes.push_back(std::move(*s));
      size_t i = 0;
      for (; i < vs.size(); ++i) {
        if (++digit[i] < facts.scalar_values[vs[i].sort].size()) break;
        digit[i] = 0;
      }
      if (i == vs.size()) break;
    }
  }
  return canonicalize(ExistsFormula{std::move(cubes)});
}

}  // namespace arbac
