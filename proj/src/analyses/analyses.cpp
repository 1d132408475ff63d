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

#include "arbac/analyses/analyses.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "arbac/errors.hpp"
#include "arbac/reach/bounded.hpp"

namespace arbac {
namespace {

void add_theory(BSRProblem& p, const UniversalTheory& t, const std::vector<PredId>& copies) {
  for (const auto& ax : t.axioms) {
    if (!mentions_predicate(ax.matrix, kUa)) {
      p.add(ax);
      continue;
    }
    for (PredId q : copies) p.add(ForallFormula{ax.vars, rename_predicate(ax.matrix, kUa, q)});
  }
}

ExistsFormula rename_ua(const ExistsFormula& f, PredId to) {
  ExistsFormula out;
  for (const auto& c : f.cubes) out.cubes.push_back(rename_predicate(c, kUa, to));
  return out;
}

SatResult solve(const BSRProblem& p, const SolverOptions& opts) {
  SatResult r = check_sat(p, opts);
  if (r.verdict == Verdict::kTimeout) throw SolverTimeout("check_sat budget exhausted");
  return r;
}

}  // namespace

InvariantResult check_inductive_invariant(const SymbolicPolicy& policy, const ForallFormula& psi,
                                          const SolverOptions& opts) {
  InvariantResult res;
  {
    BSRProblem p;
    p.signature = policy.signature;
    p.add(policy.theory);
    p.add(policy.init);
    p.add(negate_forall(psi));
    SatResult r = solve(p, opts);
    ++res.solver_calls;
    if (r.verdict == Verdict::kSat) {
      res.holds = false;
      res.which = InvariantResult::Failure::kInit;
      res.countermodel = r.model;
      return res;
    }
  }
  auto sig = std::make_shared<Signature>(*policy.signature);
  PredId post = sig->add_predicate("ua@post", {kUserSort, kRoleSort});
  Term sub = Term::constant(kUserSort, sig->add_constant("subject@", kUserSort));
  Term tgt = Term::constant(kRoleSort, sig->add_constant("target@", kRoleSort));
  for (const auto& t : policy.transitions) {
    BSRProblem p;
    p.signature = sig;
    add_theory(p, policy.theory, {kUa, post});
    for (const auto& c : policy.constraints) p.add(c);
    p.add(psi);
    StepEncoding e = encode_step(t, kUa, post, sub, tgt);
    p.add(ExistsFormula::of(e.guard));
    p.add(e.frame);
    p.add(rename_ua(negate_forall(psi), post));
    SatResult r = solve(p, opts);
    ++res.solver_calls;
    if (r.verdict == Verdict::kSat) {
      res.holds = false;
      res.which = InvariantResult::Failure::kStep;
      res.rule = t.label;
      res.countermodel = project_state(*r.model, policy.signature, kUa);
      res.successor = project_state(*r.model, policy.signature, post);
      return res;
    }
  }
  return res;
}

ContainmentResult role_containment(const PolicyDecls& decls, const std::string& r1,
                                   const std::string& r2, const ReachOptions& opts) {
  if (!decls.hierarchy.empty() || !decls.schema_seniority.empty())
    throw HierarchyPresent("role containment needs a flat hierarchy");
  if (r1 == r2) throw std::invalid_argument("containment of a role in itself");
  PolicyDecls d = decls;
  auto roles = std::find_if(d.sorts.begin(), d.sorts.end(),
                            [](const SortSpec& s) { return s.name == "Role"; });
  if (roles == d.sorts.end()) throw std::invalid_argument("no Role sort");
  for (const auto& r : {r1, r2})
    if (std::find(roles->values.begin(), roles->values.end(), r) == roles->values.end())
      throw std::invalid_argument("unknown role " + r);
  const std::string probe = "probe@";
  roles->values.push_back(probe);
  RuleDecl rule;
  rule.kind = RuleDecl::Kind::kAssign;
  rule.label = probe;
  RoleExpr in1, out2;
  in1.role = RoleRef{r1, false, {}};
  in1.explicit_membership = true;
  out2.role = RoleRef{r2, false, {}};
  out2.negative = true;
  rule.pre = {in1, out2};
  rule.target = RoleRef{probe, false, {}};
  d.rules.push_back(rule);
  GoalDecl g;
  g.mode = GoalDecl::UserMode::kDistinct;
  g.pairs.push_back(GoalPair{RoleRef{probe, false, {}}, GoalPair::Cmp::kEq, std::nullopt});
  d.goal = g;

  ContainmentResult res;
  res.reach = breach(compile_policy(d), opts);
  res.holds = res.reach.verdict == ReachVerdict::kUnreachable;
  if (res.reach.trace) {
    std::vector<TraceStep> run = *res.reach.trace;
    if (!run.empty() && run.back().label == probe) run.pop_back();
    res.witness = std::move(run);
  }
  return res;
}

WPResult weakest_precondition(const SymbolicPolicy& policy, const ExistsFormula& goal,
                              const std::string& user, const ReachOptions& opts) {
  const Signature& sig = *policy.signature;
  auto uk = sig.find_constant(user);
  if (!uk || sig.constant(*uk).sort != kUserSort)
    throw UndeclaredConstant("unknown user " + user);
  if (!policy.facts.is_scalar(kUserSort) || !policy.facts.is_scalar(kRoleSort))
    throw UnsupportedInstance("weakest preconditions need scalar User and Role sorts");
  const auto& roles = sig.constants_of(kRoleSort);
  if (roles.size() > 20) throw UnsupportedInstance("more than 20 roles");

  SymbolicPolicy open = policy;
  open.init = ForallFormula{{}, Formula::falsity()};
  ReachOptions o = opts;
  o.extract_trace = false;
  ReachResult r = breach(open, goal, o);
  WPResult res;
  res.search = r.verdict;
  res.nodes = static_cast<long>(r.cubes.size());
  if (r.verdict != ReachVerdict::kUnreachable) return res;

  // Candidates by size; a set is minimal when it works and contains no
  // smaller working set, which then already is in the result.
  const int n = static_cast<int>(roles.size());
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a) < __builtin_popcount(b);
  });
  const Term x = Term::var(kUserSort, 0), y = Term::var(kRoleSort, 0);
  const Term u = Term::constant(kUserSort, *uk);
  std::vector<std::uint32_t> found;
  for (std::uint32_t m : masks) {
    if (std::any_of(found.begin(), found.end(), [&](std::uint32_t f) { return (f & m) == f; }))
      continue;
    std::vector<Formula> held;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1)
        held.push_back(Formula::literal(Literal::eq(y, Term::constant(kRoleSort, roles[i]))));
    Formula in_s = Formula::conj({Formula::literal(Literal::eq(x, u)), Formula::disj(held)});
    Formula ua = Formula::literal(Literal::make(true, kUa, {x, y}));
    BSRProblem p;
    p.signature = policy.signature;
    p.add(policy.theory);
    p.add(ForallFormula{{x, y}, Formula::conj({Formula::disj({negate(ua), in_s}),
                                               Formula::disj({ua, negate(in_s)})})});
    p.add(*r.fixpoint);
    ++res.candidates;
    if (solve(p, opts.solver).verdict == Verdict::kSat) found.push_back(m);
  }
  for (std::uint32_t m : found) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1) names.push_back(sig.constant(roles[i]).name);
    std::sort(names.begin(), names.end());
    res.minimal_sets.push_back(std::move(names));
  }
  std::sort(res.minimal_sets.begin(), res.minimal_sets.end());
  return res;
}

WPResult weakest_precondition(const PolicyDecls& decls, const std::string& user,
                              const ReachOptions& opts) {
  SymbolicPolicy sp = compile_policy(decls);
  if (!sp.goal) throw InternalError("policy has no goal");
  return weakest_precondition(sp, *sp.goal, user, opts);
}

}  // namespace arbac
