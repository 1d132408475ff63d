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

#include "arbac/reach/bounded.hpp"

#include <memory>
#include <string>

#include "arbac/errors.hpp"

namespace arbac {
namespace {

Formula eq(const Term& a, const Term& b, bool pos = true) {
  return Formula::literal(Literal::eq(a, b, pos));
}

Formula ua_lit(PredId p, const Term& x, const Term& y, bool pos = true) {
  return Formula::literal(Literal::make(pos, p, {x, y}));
}

}  // namespace

StepEncoding encode_step(const TransitionRule& t, PredId pre, PredId post, const Term& subject,
                         const Term& target) {
  const Term x = Term::var(kUserSort, 0), y = Term::var(kRoleSort, 0);
  StepEncoding e;
  e.guard = rename_predicate(t.guard, kUa, pre);
  e.guard.lits.push_back(Literal::eq(t.subject, subject));
  e.guard.lits.push_back(Literal::eq(t.target, target));
  Formula hit = Formula::conj({eq(x, subject), eq(y, target)});
  Formula next = t.kind == TransitionRule::Kind::kAssign
                     ? Formula::disj({hit, ua_lit(pre, x, y)})
                     : Formula::conj({negate(hit), ua_lit(pre, x, y)});
  e.frame = ForallFormula{{x, y}, Formula::conj({Formula::disj({ua_lit(post, x, y, false), next}),
                                                 Formula::disj({ua_lit(post, x, y), negate(next)})})};
  return e;
}

Configuration project_state(const Configuration& m, const SignaturePtr& sig, PredId ua_copy) {
  std::vector<int> sizes;
  for (SortId s = 0; s < sig->num_sorts(); ++s) sizes.push_back(m.domain_size(s));
  Configuration c(sig, sizes);
  for (ConstId k = 0; k < sig->num_constants(); ++k) c.set_constant(k, m.constant(k));
  for (PredId q = 0; q < sig->num_predicates(); ++q)
    c.mutable_extension(q) = m.extension(q == kUa ? ua_copy : q);
  return c;
}

BoundedResult bounded_reach(const SymbolicPolicy& policy, const ExistsFormula& goal, int bound,
                            const SolverOptions& opts) {
  if (bound < 0) throw InternalError("negative bound");
  auto sig = std::make_shared<Signature>(*policy.signature);
  std::vector<PredId> ua{kUa};
  for (int i = 1; i <= bound; ++i)
    ua.push_back(sig->add_predicate("ua@" + std::to_string(i), {kUserSort, kRoleSort}));
  SortId rule_sort = sig->add_sort("Rule@", true);
  std::vector<Term> rule_const;
  for (size_t j = 0; j < policy.transitions.size(); ++j)
    rule_const.push_back(
        Term::constant(rule_sort, sig->add_constant("rule@" + std::to_string(j), rule_sort)));
  std::vector<Term> choice, sub, tgt;
  for (int i = 0; i < bound; ++i) {
    auto n = std::to_string(i);
    choice.push_back(Term::constant(rule_sort, sig->add_constant("choice@" + n, rule_sort)));
    sub.push_back(Term::constant(kUserSort, sig->add_constant("subject@" + n, kUserSort)));
    tgt.push_back(Term::constant(kRoleSort, sig->add_constant("target@" + n, kRoleSort)));
  }

  BSRProblem p;
  p.signature = sig;
  for (const auto& ax : policy.theory.axioms) {
    if (!mentions_predicate(ax.matrix, kUa)) {
      p.add(ax);
      continue;
    }
    for (PredId q : ua) p.add(ForallFormula{ax.vars, rename_predicate(ax.matrix, kUa, q)});
  }
  for (size_t a = 0; a < rule_const.size(); ++a)
    for (size_t b = a + 1; b < rule_const.size(); ++b)
      p.add(ForallFormula{{}, eq(rule_const[a], rule_const[b], false)});
  p.add(policy.init);
  for (PredId q : ua)
    for (const auto& c : policy.constraints)
      p.add(ForallFormula{c.vars, rename_predicate(c.matrix, kUa, q)});

  for (int i = 0; i < bound; ++i) {
    if (policy.transitions.empty()) {
      p.add(ExistsFormula::falsity());
      break;
    }
    ExistsFormula step;
    for (size_t j = 0; j < policy.transitions.size(); ++j) {
      StepEncoding e = encode_step(policy.transitions[j], ua[i], ua[i + 1], sub[i], tgt[i]);
      e.guard.lits.push_back(Literal::eq(choice[i], rule_const[j]));
      step.cubes.push_back(std::move(e.guard));
      p.add(ForallFormula{e.frame.vars,
                          Formula::disj({eq(choice[i], rule_const[j], false), e.frame.matrix})});
    }
    p.add(std::move(step));
  }
  ExistsFormula g;
  for (const auto& c : goal.cubes) g.cubes.push_back(rename_predicate(c, kUa, ua[bound]));
  p.add(std::move(g));

  SatResult r = check_sat(p, opts);
  BoundedResult out;
  out.verdict = r.verdict;
  out.bound = bound;
  out.stats = r.stats;
  if (r.verdict != Verdict::kSat || !r.model) return out;
  const Configuration& m = *r.model;
  for (int i = 0; i <= bound; ++i) {
    out.states.push_back(project_state(m, policy.signature, ua[i]));
    if (i < bound) {
      int chosen = m.constant(choice[i].id);
      for (size_t j = 0; j < rule_const.size(); ++j)
        if (m.constant(rule_const[j].id) == chosen) out.labels.push_back(policy.transitions[j].label);
    }
  }
  return out;
}

std::vector<BoundedResult> bounded_reach_upto(const SymbolicPolicy& policy,
                                              const ExistsFormula& goal, int max_bound,
                                              const SolverOptions& opts) {
  std::vector<BoundedResult> out;
  for (int l = 0; l <= max_bound; ++l) {
    out.push_back(bounded_reach(policy, goal, l, opts));
    if (out.back().verdict != Verdict::kUnsat) break;
  }
  return out;
}

}  // namespace arbac
