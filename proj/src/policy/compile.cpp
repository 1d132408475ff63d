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

#include "arbac/policy/compile.hpp"

#include <algorithm>
#include <sstream>

#include "arbac/bsr/solver.hpp"
#include "arbac/errors.hpp"
#include "arbac/fol/print.hpp"

namespace arbac {
namespace {

ConstId lookup_constant(const Signature& sig, const std::string& name, SortId sort) {
  auto c = sig.find_constant(name);
  if (!c) throw UndeclaredConstant("undeclared constant " + name);
  if (sig.constant(*c).sort != sort)
    throw SortError(name + " is not a " + sig.sort(sort).name);
  return *c;
}

Term role_constant(const Signature& sig, const std::string& name) {
  return Term::constant(kRoleSort, lookup_constant(sig, name, kRoleSort));
}

Term user_constant(const Signature& sig, const std::string& name) {
  return Term::constant(kUserSort, lookup_constant(sig, name, kUserSort));
}

Literal ua(const Term& u, const Term& r, bool pos = true) {
  return Literal::make(pos, kUa, {u, r});
}
Literal geq(const Term& a, const Term& b, bool pos = true) {
  return Literal::make(pos, kGeq, {a, b});
}
Formula lit(Literal l) { return Formula::literal(std::move(l)); }

// Fresh variable ids per sort.
class VarAlloc {
 public:
  explicit VarAlloc(int num_sorts) : next_(num_sorts, 0) {}
  Term fresh(SortId s) {
    Term v = Term::var(s, next_[s]++);
    vars_.push_back(v);
    return v;
  }
  const std::vector<Term>& vars() const { return vars_; }

 private:
  std::vector<int> next_;
  std::vector<Term> vars_;
};

const SchemaDecl* find_schema(const PolicyDecls& d, const std::string& name, size_t arity) {
  for (const auto& s : d.schemas)
    if (s.name == name && s.params.size() == arity) return &s;
  return nullptr;
}

SortId sort_of(const Signature& sig, const std::string& name) {
  auto s = sig.find_sort(name);
  if (!s) throw SortError("unknown sort " + name);
  return *s;
}

// Lowers a role reference to a term plus the schema literal binding it.
struct RoleLowering {
  const Signature& sig;
  const PolicyDecls& decls;
  VarAlloc& alloc;
  const std::vector<std::pair<std::string, Term>>& params;

  Term lower(const RoleRef& ref, std::vector<Literal>& out) {
    if (!ref.schema) return role_constant(sig, ref.name);
    const SchemaDecl* sc = find_schema(decls, ref.name, ref.args.size());
    if (!sc)
      throw UndeclaredConstant("no schema " + ref.name + " with " +
                               std::to_string(ref.args.size()) + " parameters");
    auto pred = sig.find_predicate(schema_predicate_name(decls, *sc));
    std::vector<Term> args;
    for (size_t i = 0; i < ref.args.size(); ++i) {
      SortId want = sort_of(sig, sc->params[i].second);
      const std::string& a = ref.args[i];
      auto it = std::find_if(params.begin(), params.end(),
                             [&](const auto& p) { return p.first == a; });
      if (it != params.end()) {
        if (it->second.sort != want) throw SortError("parameter " + a + " has the wrong sort");
        args.push_back(it->second);
      } else {
        args.push_back(Term::constant(want, lookup_constant(sig, a, want)));
      }
    }
    Term r = alloc.fresh(kRoleSort);
    args.push_back(r);
    out.push_back(Literal::make(true, *pred, std::move(args)));
    return r;
  }
};

// ua(x, y) <=> OR_i (x = a_i and y = b_i), as one universal formula.
ForallFormula completion(PredId p, SortId sx, SortId sy,
                         const std::vector<std::pair<Term, Term>>& facts) {
  Term x = Term::var(sx, 0), y = Term::var(sy, 0);
  std::vector<Formula> alts;
  for (const auto& [a, b] : facts)
    alts.push_back(Formula::conj({lit(Literal::eq(x, a)), lit(Literal::eq(y, b))}));
  Formula rhs = Formula::disj(alts);
  Literal atom = Literal::make(true, p, {x, y});
  Formula m = Formula::conj({Formula::disj({lit(atom.negated()), rhs}),
                             Formula::disj({lit(atom), negate(rhs)})});
  return ForallFormula{{x, y}, m};
}

std::vector<std::pair<std::string, Term>> bind_params(const Signature& sig,
                                                      const RuleDecl& rule,
                                                      VarAlloc& alloc) {
  std::vector<std::pair<std::string, Term>> out;
  for (const auto& [name, sort] : rule.vars) {
    for (const auto& p : out)
      if (p.first == name) throw ParseError("duplicate variable " + name);
    out.emplace_back(name, alloc.fresh(sort_of(sig, sort)));
  }
  return out;
}

}  // namespace

UaStar expand_ua_star(const Term& user, const Term& role, int fresh_role_id, bool positive) {
  if (!positive)
    throw NegativeUaStar("negated implicit membership is not an existential cube");
  Term v = Term::var(kRoleSort, fresh_role_id);
  return UaStar{v, {ua(user, v), geq(v, role)}};
}

std::string schema_predicate_name(const PolicyDecls& decls, const SchemaDecl& schema) {
  int same = 0;
  for (const auto& s : decls.schemas) same += s.name == schema.name;
  if (same <= 1) return schema.name;
  return schema.name + "_" + std::to_string(schema.params.size());
}

SignaturePtr build_signature(const PolicyDecls& decls) {
  auto sig = std::make_shared<Signature>();
  for (const auto& s : decls.sorts) {
    SortId id;
    if (auto found = sig->find_sort(s.name)) {
      id = *found;
    } else {
      id = sig->add_sort(s.name, true);
    }
    for (const auto& v : s.values) sig->add_constant(v, id);
  }
  for (const auto& sc : decls.schemas) {
    std::vector<SortId> args;
    for (const auto& [pname, sname] : sc.params) {
      SortId s = sort_of(*sig, sname);
      if (s == kUserSort || s == kRoleSort || s == kPermSort)
        throw SortError("schema parameter " + pname + " must have a parameter sort");
      args.push_back(s);
    }
    args.push_back(kRoleSort);
    for (const auto& other : decls.schemas)
      if (&other != &sc && other.name == sc.name && other.params.size() == sc.params.size())
        throw SortError("schema " + sc.name + " overloaded with equal arity");
    sig->add_predicate(schema_predicate_name(decls, sc), std::move(args));
  }
  return sig;
}

SchemaCompilation compile_role_schema(const Signature& sig, const SchemaDecl& schema,
                                      const PolicyDecls& decls) {
  SchemaCompilation out;
  auto pred = sig.find_predicate(schema_predicate_name(decls, schema));
  if (!pred) throw SortError("schema predicate missing for " + schema.name);
  out.pred = *pred;
  const PredDecl& pd = sig.predicate(*pred);
  std::vector<int> next(sig.num_sorts(), 0);
  std::vector<Term> xs;
  for (size_t i = 0; i + 1 < pd.args.size(); ++i)
    xs.push_back(Term::var(pd.args[i], next[pd.args[i]]++));
  Term r1 = Term::var(kRoleSort, 0), r2 = Term::var(kRoleSort, 1);
  auto app = [&](const Term& r) {
    std::vector<Term> a = xs;
    a.push_back(r);
    return Literal::make(true, *pred, std::move(a));
  };
  std::vector<Term> vars = xs;
  vars.push_back(r1);
  vars.push_back(r2);
  out.axioms.push_back(ForallFormula{
      vars, Formula::disj({lit(app(r1).negated()), lit(app(r2).negated()),
                           lit(Literal::eq(r1, r2))})});
  auto lookup = [&](const std::string& name) {
    auto p = sig.find_predicate(name);
    if (!p) throw UndeclaredConstant("unknown schema predicate " + name);
    return *p;
  };
  for (const auto& [from, to] : decls.schema_links) {
    if (lookup(from) != *pred) continue;
    PredId q = lookup(to);
    const PredDecl& qd = sig.predicate(q);
    if (qd.args.size() > pd.args.size())
      throw SortError("schema link " + from + " -> " + to + " widens parameters");
    std::vector<Term> qa;
    for (size_t i = 0; i + 1 < qd.args.size(); ++i) {
      if (qd.args[i] != pd.args[i])
        throw SortError("schema link " + from + " -> " + to + " mismatches sorts");
      qa.push_back(xs[i]);
    }
    qa.push_back(r1);
    std::vector<Term> lv = xs;
    lv.push_back(r1);
    out.axioms.push_back(ForallFormula{
        lv, Formula::disj({lit(app(r1).negated()), lit(Literal::make(true, q, qa))})});
  }
  for (const auto& [senior, junior] : decls.schema_seniority) {
    if (lookup(senior) != *pred) continue;
    PredId q = lookup(junior);
    const PredDecl& qd = sig.predicate(q);
    std::vector<Term> ys;
    std::vector<int> n2 = next;
    for (size_t i = 0; i + 1 < qd.args.size(); ++i) ys.push_back(Term::var(qd.args[i], n2[qd.args[i]]++));
    std::vector<Term> qa = ys;
    qa.push_back(r2);
    std::vector<Term> sv = xs;
    sv.insert(sv.end(), ys.begin(), ys.end());
    sv.push_back(r1);
    sv.push_back(r2);
    out.axioms.push_back(ForallFormula{
        sv, Formula::disj({lit(app(r1).negated()), lit(Literal::make(true, q, qa).negated()),
                           lit(geq(r1, r2))})});
  }
  return out;
}

TransitionRule compile_can_assign(const Signature& sig, const PolicyDecls& decls,
                                  const RuleDecl& rule, const CompileOptions& opts) {
  VarAlloc alloc(sig.num_sorts());
  std::vector<Literal> lits;
  std::optional<Term> admin_user;
  if (rule.admin) admin_user = alloc.fresh(kUserSort);
  Term u1 = alloc.fresh(kUserSort);
  auto params = bind_params(sig, rule, alloc);
  RoleLowering low{sig, decls, alloc, params};
  auto next_role = [&] {
    int id = 0;
    for (const Term& v : alloc.vars()) id += v.sort == kRoleSort;
    return id;
  };
  if (rule.admin) {
    Term ra = low.lower(*rule.admin, lits);
    UaStar s = expand_ua_star(*admin_user, ra, next_role());
    alloc.fresh(kRoleSort);
    lits.insert(lits.end(), s.lits.begin(), s.lits.end());
    for (const auto& t : rule.trusted)
      lits.push_back(Literal::eq(*admin_user, user_constant(sig, t), false));
  } else if (!rule.trusted.empty()) {
    throw ParseError("trusted users need an admin clause");
  }
  for (const auto& e : rule.pre) {
    if (e.implicit_negative)
      throw NegativeUaStar("implicit negative precondition on " + e.role.name);
    Term r = low.lower(e.role, lits);
    if (e.negative) {
      lits.push_back(ua(u1, r, false));
    } else if (e.explicit_membership) {
      lits.push_back(ua(u1, r));
    } else {
      UaStar s = expand_ua_star(u1, r, next_role());
      alloc.fresh(kRoleSort);
      lits.insert(lits.end(), s.lits.begin(), s.lits.end());
    }
  }
  Term target = low.lower(rule.target, lits);
  if (opts.smer_guards && target.is_const()) {
    for (const auto& [a, b] : decls.smer) {
      Term ta = role_constant(sig, a), tb = role_constant(sig, b);
      if (ta == target) lits.push_back(ua(u1, tb, false));
      if (tb == target) lits.push_back(ua(u1, ta, false));
    }
  }
  TransitionRule t;
  t.kind = TransitionRule::Kind::kAssign;
  t.guard = Cube{alloc.vars(), lits};
  t.subject = u1;
  t.target = target;
  t.label = rule.label;
  check_well_sorted(sig, t.guard);
  return t;
}

TransitionRule compile_can_revoke(const Signature& sig, const PolicyDecls& decls,
                                  const RuleDecl& rule) {
  VarAlloc alloc(sig.num_sorts());
  std::vector<Literal> lits;
  std::optional<Term> admin_user;
  if (rule.admin) admin_user = alloc.fresh(kUserSort);
  Term u1 = alloc.fresh(kUserSort);
  auto params = bind_params(sig, rule, alloc);
  RoleLowering low{sig, decls, alloc, params};
  if (rule.admin) {
    Term ra = low.lower(*rule.admin, lits);
    int id = 0;
    for (const Term& v : alloc.vars()) id += v.sort == kRoleSort;
    UaStar s = expand_ua_star(*admin_user, ra, id);
    alloc.fresh(kRoleSort);
    lits.insert(lits.end(), s.lits.begin(), s.lits.end());
  }
  Term target = low.lower(rule.target, lits);
  TransitionRule t;
  t.kind = TransitionRule::Kind::kRevoke;
  t.guard = Cube{alloc.vars(), lits};
  t.subject = u1;
  t.target = target;
  t.label = rule.label;
  check_well_sorted(sig, t.guard);
  return t;
}

ExistsFormula compile_goal(const Signature& sig, const PolicyDecls& decls, const GoalDecl& goal) {
  if (goal.pairs.empty()) throw ParseError("empty goal");
  VarAlloc alloc(sig.num_sorts());
  std::vector<Literal> lits;
  std::vector<std::pair<std::string, Term>> no_params;
  RoleLowering low{sig, decls, alloc, no_params};
  std::optional<Term> shared;
  if (goal.mode != GoalDecl::UserMode::kDistinct) shared = alloc.fresh(kUserSort);
  std::vector<Literal> tail;
  if (goal.mode == GoalDecl::UserMode::kNamed)
    tail.push_back(Literal::eq(*shared, user_constant(sig, goal.user)));
  for (const auto& gp : goal.pairs) {
    Term u = shared ? *shared : alloc.fresh(kUserSort);
    Term r = alloc.fresh(kRoleSort);
    std::optional<Term> p;
    if (gp.perm) p = alloc.fresh(kPermSort);
    lits.push_back(ua(u, r));
    if (p) lits.push_back(Literal::make(true, kPa, {*p, r}));
    if (gp.role.schema) {
      std::vector<Literal> bind;
      Term sr = low.lower(gp.role, bind);
      Substitution sub;
      if (gp.cmp == GoalPair::Cmp::kEq) {
        sub.bind(sr, r);
        for (auto& l : bind) tail.push_back(sub.apply(l));
      } else {
        tail.insert(tail.end(), bind.begin(), bind.end());
        tail.push_back(geq(r, sr));
      }
    } else {
      Term e = role_constant(sig, gp.role.name);
      tail.push_back(gp.cmp == GoalPair::Cmp::kEq ? Literal::eq(r, e) : geq(r, e));
    }
    if (p) tail.push_back(Literal::eq(*p, Term::constant(kPermSort,
                                                         lookup_constant(sig, *gp.perm, kPermSort))));
  }
  lits.insert(lits.end(), tail.begin(), tail.end());
  std::vector<Term> vars;
  for (const Term& v : alloc.vars()) {
    bool used = false;
    for (const Literal& l : lits)
      for (const Term& a : l.atom.args) used |= a == v;
    if (used) vars.push_back(v);
  }
  Cube c{vars, lits};
  check_well_sorted(sig, c);
  return ExistsFormula::of(std::move(c));
}

SymbolicPolicy compile_policy(const PolicyDecls& decls, const CompileOptions& opts) {
  SymbolicPolicy p;
  SignaturePtr sigp = build_signature(decls);
  const Signature& sig = *sigp;
  p.signature = sigp;
  p.facts.scalar_values.assign(sig.num_sorts(), {});

  // Scalar-value theories.
  for (const auto& s : decls.sorts) {
    if (!s.scalar) continue;
    if (s.values.empty()) throw ParseError("scalar sort " + s.name + " needs values");
    SortId id = sort_of(sig, s.name);
    std::vector<Term> cs;
    for (const auto& v : s.values) {
      ConstId c = lookup_constant(sig, v, id);
      p.facts.scalar_values[id].push_back(c);
      cs.push_back(Term::constant(id, c));
    }
    std::vector<Formula> diff;
    for (size_t i = 0; i < cs.size(); ++i)
      for (size_t j = i + 1; j < cs.size(); ++j) diff.push_back(lit(Literal::eq(cs[i], cs[j], false)));
    if (!diff.empty()) p.theory.add(ForallFormula{{}, Formula::conj(diff)});
    Term x = Term::var(id, 0);
    std::vector<Formula> alts;
    for (const Term& c : cs) alts.push_back(lit(Literal::eq(x, c)));
    p.theory.add(ForallFormula{{x}, Formula::disj(alts)});
  }

  // Role hierarchy: partial order axioms, base facts, completion.
  const auto& roles = sig.constants_of(kRoleSort);
  std::map<ConstId, size_t> ridx;
  for (size_t i = 0; i < roles.size(); ++i) ridx[roles[i]] = i;
  std::vector<std::vector<bool>> clo(roles.size(), std::vector<bool>(roles.size(), false));
  for (size_t i = 0; i < roles.size(); ++i) clo[i][i] = true;
  for (const auto& [a, b] : decls.hierarchy) {
    Term ta = role_constant(sig, a), tb = role_constant(sig, b);
    clo[ridx[ta.id]][ridx[tb.id]] = true;
  }
  for (size_t k = 0; k < roles.size(); ++k)
    for (size_t i = 0; i < roles.size(); ++i)
      if (clo[i][k])
        for (size_t j = 0; j < roles.size(); ++j)
          if (clo[k][j]) clo[i][j] = true;
  for (size_t i = 0; i < roles.size(); ++i)
    for (size_t j = 0; j < roles.size(); ++j) {
      if (i != j && clo[i][j] && clo[j][i])
        throw CyclicHierarchy("cycle between " + sig.constant(roles[i]).name + " and " +
                              sig.constant(roles[j]).name);
      if (clo[i][j]) p.facts.geq.insert({roles[i], roles[j]});
    }
  {
    Term r1 = Term::var(kRoleSort, 0), r2 = Term::var(kRoleSort, 1), r3 = Term::var(kRoleSort, 2);
    p.theory.add(ForallFormula{{r1}, lit(geq(r1, r1))});
    p.theory.add(ForallFormula{
        {r1, r2}, Formula::disj({lit(geq(r1, r2, false)), lit(geq(r2, r1, false)),
                                 lit(Literal::eq(r1, r2))})});
    p.theory.add(ForallFormula{
        {r1, r2, r3}, Formula::disj({lit(geq(r1, r2, false)), lit(geq(r2, r3, false)),
                                     lit(geq(r1, r3))})});
    for (const auto& [a, b] : decls.hierarchy)
      p.theory.add(ForallFormula{{}, lit(geq(role_constant(sig, a), role_constant(sig, b)))});
    p.facts.hierarchy_complete = decls.schema_seniority.empty();
    if (p.facts.hierarchy_complete) {
      std::vector<Formula> alts{lit(geq(r1, r2, false)), lit(Literal::eq(r1, r2))};
      for (const auto& [a, b] : p.facts.geq) {
        if (a == b) continue;
        alts.push_back(Formula::conj({lit(Literal::eq(r1, Term::constant(kRoleSort, a))),
                                      lit(Literal::eq(r2, Term::constant(kRoleSort, b)))}));
      }
      p.theory.add(ForallFormula{{r1, r2}, Formula::disj(alts)});
    }
  }

  // Permission assignment.
  if (decls.pa_declared) {
    std::vector<std::pair<Term, Term>> facts;
    for (const auto& [perm, role] : decls.pa) {
      Term tp = Term::constant(kPermSort, lookup_constant(sig, perm, kPermSort));
      Term tr = role_constant(sig, role);
      facts.emplace_back(tp, tr);
      p.facts.pa.insert({tp.id, tr.id});
    }
    p.theory.add(completion(kPa, kPermSort, kRoleSort, facts));
    p.facts.pa_complete = true;
  }

  for (const auto& sc : decls.schemas)
    for (auto& ax : compile_role_schema(sig, sc, decls).axioms) p.theory.add(std::move(ax));
  for (const auto& a : decls.axioms) p.theory.add(parse_forall(sig, a));

  // Initial states.
  if (decls.init_formula) {
    p.init = parse_forall(sig, *decls.init_formula);
  } else {
    std::vector<std::pair<Term, Term>> facts;
    for (const auto& [u, r] : decls.init)
      facts.emplace_back(user_constant(sig, u), role_constant(sig, r));
    p.init = completion(kUa, kUserSort, kRoleSort, facts);
  }

  // Constraints.
  for (const auto& [a, b] : decls.smer) {
    Term ta = role_constant(sig, a), tb = role_constant(sig, b);
    if (ta == tb) throw ParseError("smer needs two distinct roles");
    p.smer.emplace_back(ta.id, tb.id);
    Term u = Term::var(kUserSort, 0);
    p.constraints.push_back(
        ForallFormula{{u}, Formula::disj({lit(ua(u, ta, false)), lit(ua(u, tb, false))})});
  }
  for (const auto& c : decls.constraints) p.constraints.push_back(parse_forall(sig, c));

  // Transitions.
  int n_assign = 0, n_revoke = 0;
  for (const auto& r : decls.rules) {
    RuleDecl rd = r;
    if (rd.kind == RuleDecl::Kind::kAssign) {
      ++n_assign;
      if (rd.label.empty()) rd.label = "can_assign_" + std::to_string(n_assign);
      p.transitions.push_back(compile_can_assign(sig, decls, rd, opts));
    } else {
      ++n_revoke;
      if (rd.label.empty()) rd.label = "can_revoke_" + std::to_string(n_revoke);
      p.transitions.push_back(compile_can_revoke(sig, decls, rd));
    }
  }
  for (size_t i = 0; i < p.transitions.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (p.transitions[i].label == p.transitions[j].label)
        throw ParseError("duplicate rule label " + p.transitions[i].label);

  if (decls.goal) {
    p.goal = compile_goal(sig, decls, *decls.goal);
    for (const auto& gp : decls.goal->pairs)
      if (gp.perm && !decls.pa_declared)
        p.warnings.push_back("goal mentions permission " + *gp.perm +
                             " but pa is unconstrained");
  }

  check_well_sorted(sig, p.init.matrix);
  for (const auto& ax : p.theory.axioms) check_well_sorted(sig, ax.matrix);
  for (const auto& c : p.constraints) check_well_sorted(sig, c.matrix);

  if (opts.check_consistency) {
    BSRProblem prob{sigp, {}, {}};
    prob.add(p.theory);
    SatResult res = check_sat(prob);
    if (res.verdict == Verdict::kUnsat) throw InconsistentTheory("policy theory is unsatisfiable");
    prob.add(p.init);
    for (const auto& c : p.constraints) prob.add(c);
    if (check_sat(prob).verdict == Verdict::kUnsat)
      p.warnings.push_back("no initial state satisfies the theory and constraints");
  }
  return p;
}

std::string serialize_symbolic_policy(const SymbolicPolicy& p) {
  const Signature& sig = *p.signature;
  std::ostringstream o;
  for (SortId s = 0; s < sig.num_sorts(); ++s) {
    o << "(sort " << sig.sort(s).name;
    for (ConstId c : sig.constants_of(s)) o << ' ' << sig.constant(c).name;
    o << ")\n";
  }
  for (PredId q = 0; q < sig.num_predicates(); ++q) {
    o << "(predicate " << sig.pred_name(q);
    for (SortId s : sig.predicate(q).args) o << ' ' << sig.sort(s).name;
    o << ")\n";
  }
  for (const auto& ax : p.theory.axioms) o << "(axiom " << to_string(sig, ax) << ")\n";
  o << "(init " << to_string(sig, p.init) << ")\n";
  for (const auto& c : p.constraints) o << "(constraint " << to_string(sig, c) << ")\n";
  for (const auto& t : p.transitions) {
    o << "(rule " << t.label << ' '
      << (t.kind == TransitionRule::Kind::kAssign ? "assign" : "revoke") << ' '
      << to_string(sig, t.subject) << ' ' << to_string(sig, t.target) << ' '
      << to_string(sig, t.guard) << ")\n";
  }
  if (p.goal) o << "(goal " << to_string(sig, *p.goal) << ")\n";
  return o.str();
}

}  // namespace arbac
