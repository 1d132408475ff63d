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

#include "arbac/oracle/concrete.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "arbac/errors.hpp"
#include "arbac/fol/print.hpp"
#include "arbac/oracle/eval.hpp"

namespace arbac {
namespace {

int index_of(const std::vector<std::string>& names, const std::string& n, const char* what) {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) throw UndeclaredConstant(std::string("undeclared ") + what + " " + n);
  return static_cast<int>(it - names.begin());
}

const SortSpec* find_sort(const PolicyDecls& d, const std::string& name) {
  for (const auto& s : d.sorts)
    if (s.name == name) return &s;
  return nullptr;
}

int role_index(const ConcreteInstance& inst, const RoleRef& r) {
  if (r.schema) throw UnsupportedInstance("role schemas are not supported by the oracle");
  return index_of(inst.roles, r.name, "role");
}

}  // namespace

bool ConcreteInstance::member(UaState s, int u, int r) const {
  for (int q = 0; q < num_roles(); ++q)
    if (has(s, u, q) && geq[q][r]) return true;
  return false;
}

ConcreteInstance make_concrete(const PolicyDecls& d) {
  if (!d.schemas.empty()) throw UnsupportedInstance("role schemas are not supported by the oracle");
  if (!d.axioms.empty()) throw UnsupportedInstance("extra axioms are not supported by the oracle");
  ConcreteInstance inst;
  const SortSpec* us = find_sort(d, "User");
  const SortSpec* rs = find_sort(d, "Role");
  const SortSpec* ps = find_sort(d, "Permission");
  if (!us || !us->scalar || !rs || !rs->scalar)
    throw UnsupportedInstance("the oracle needs scalar User and Role sorts");
  if (ps && !ps->values.empty() && !ps->scalar)
    throw UnsupportedInstance("the oracle needs a scalar Permission sort");
  inst.users = us->values;
  inst.roles = rs->values;
  if (ps) inst.perms = ps->values;
  int nu = inst.num_users(), nr = inst.num_roles();
  if (nu * nr > 64) throw UnsupportedInstance("more than 64 user-role pairs");
  inst.signature = build_signature(d);

  inst.geq.assign(nr, std::vector<bool>(nr, false));
  for (int r = 0; r < nr; ++r) inst.geq[r][r] = true;
  for (const auto& [a, b] : d.hierarchy)
    inst.geq[index_of(inst.roles, a, "role")][index_of(inst.roles, b, "role")] = true;
  for (int k = 0; k < nr; ++k)
    for (int i = 0; i < nr; ++i)
      if (inst.geq[i][k])
        for (int j = 0; j < nr; ++j)
          if (inst.geq[k][j]) inst.geq[i][j] = true;
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nr; ++j)
      if (i != j && inst.geq[i][j] && inst.geq[j][i]) throw CyclicHierarchy("cyclic hierarchy");

  inst.pa_declared = d.pa_declared;
  inst.pa.assign(inst.perms.size(), std::vector<bool>(nr, false));
  for (const auto& [p, r] : d.pa)
    inst.pa[index_of(inst.perms, p, "permission")][index_of(inst.roles, r, "role")] = true;

  int n_assign = 0, n_revoke = 0;
  for (const auto& rd : d.rules) {
    ConcreteRule cr;
    cr.kind = rd.kind;
    bool assign = rd.kind == RuleDecl::Kind::kAssign;
    cr.label = !rd.label.empty() ? rd.label
               : assign          ? "can_assign_" + std::to_string(++n_assign)
                                 : "can_revoke_" + std::to_string(++n_revoke);
    if (!rd.label.empty()) (assign ? n_assign : n_revoke)++;
    if (!rd.vars.empty()) throw UnsupportedInstance("parameter variables in rules");
    if (rd.admin) cr.admin = role_index(inst, *rd.admin);
    for (const auto& e : rd.pre) {
      int r = role_index(inst, e.role);
      if (e.implicit_negative) throw NegativeUaStar("implicit negative precondition");
      if (e.negative) {
        cr.pre_negative.push_back(r);
      } else if (e.explicit_membership) {
        cr.pre_explicit.push_back(r);
      } else {
        cr.pre_implicit.push_back(r);
      }
    }
    cr.target = role_index(inst, rd.target);
    for (const auto& t : rd.trusted) cr.trusted.push_back(index_of(inst.users, t, "user"));
    inst.rules.push_back(cr);
  }
  for (const auto& [a, b] : d.smer)
    inst.smer.emplace_back(index_of(inst.roles, a, "role"), index_of(inst.roles, b, "role"));
  for (const auto& c : d.constraints) inst.constraints.push_back(parse_forall(*inst.signature, c));

  if (d.goal) {
    for (const auto& p : d.goal->pairs) {
      role_index(inst, p.role);
      if (p.perm) {
        index_of(inst.perms, *p.perm, "permission");
        if (!d.pa_declared) throw UnsupportedInstance("goal permission with unconstrained pa");
      }
    }
    if (d.goal->mode == GoalDecl::UserMode::kNamed) index_of(inst.users, d.goal->user, "user");
    inst.goal = d.goal;
  }

  if (d.init_formula) {
    if (nu * nr > 20) throw UnsupportedInstance("init formula over too many user-role pairs");
    ForallFormula in = parse_forall(*inst.signature, *d.init_formula);
    for (UaState s = 0; s < (UaState{1} << (nu * nr)); ++s)
      if (eval_formula(to_configuration(inst, s), in)) inst.init.push_back(s);
  } else {
    UaState s = 0;
    for (const auto& [u, r] : d.init)
      s |= UaState{1} << inst.bit(index_of(inst.users, u, "user"), index_of(inst.roles, r, "role"));
    inst.init.push_back(s);
  }
  return inst;
}

std::vector<UaState> step(const ConcreteInstance& inst, const ConcreteRule& rule, UaState s) {
  std::vector<UaState> out;
  if (rule.admin >= 0) {
    bool enabled = false;
    for (int a = 0; a < inst.num_users() && !enabled; ++a) {
      if (std::find(rule.trusted.begin(), rule.trusted.end(), a) != rule.trusted.end()) continue;
      enabled = inst.member(s, a, rule.admin);
    }
    if (!enabled) return out;
  }
  for (int u = 0; u < inst.num_users(); ++u) {
    bool ok = true;
    for (int r : rule.pre_implicit) ok = ok && inst.member(s, u, r);
    for (int r : rule.pre_explicit) ok = ok && inst.has(s, u, r);
    for (int r : rule.pre_negative) ok = ok && !inst.has(s, u, r);
    if (!ok) continue;
    UaState b = UaState{1} << inst.bit(u, rule.target);
    out.push_back(rule.kind == RuleDecl::Kind::kAssign ? (s | b) : (s & ~b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool satisfies_constraints(const ConcreteInstance& inst, UaState s) {
  for (const auto& [a, b] : inst.smer)
    for (int u = 0; u < inst.num_users(); ++u)
      if (inst.has(s, u, a) && inst.has(s, u, b)) return false;
  if (inst.constraints.empty()) return true;
  Configuration c = to_configuration(inst, s);
  for (const auto& f : inst.constraints)
    if (!eval_formula(c, f)) return false;
  return true;
}

bool satisfies_goal(const ConcreteInstance& inst, const GoalDecl& goal, UaState s) {
  auto pair_holds = [&](int u, const GoalPair& p) {
    int e = index_of(inst.roles, p.role.name, "role");
    int perm = p.perm ? index_of(inst.perms, *p.perm, "permission") : -1;
    for (int r = 0; r < inst.num_roles(); ++r) {
      if (!inst.has(s, u, r)) continue;
      if (p.cmp == GoalPair::Cmp::kEq ? r != e : !inst.geq[r][e]) continue;
      if (perm >= 0 && !inst.pa[perm][r]) continue;
      return true;
    }
    return false;
  };
  auto all_pairs = [&](int u) {
    for (const auto& p : goal.pairs)
      if (!pair_holds(u, p)) return false;
    return true;
  };
  switch (goal.mode) {
    case GoalDecl::UserMode::kNamed:
      return all_pairs(index_of(inst.users, goal.user, "user"));
    case GoalDecl::UserMode::kShared:
      for (int u = 0; u < inst.num_users(); ++u)
        if (all_pairs(u)) return true;
      return false;
    case GoalDecl::UserMode::kDistinct:
      for (const auto& p : goal.pairs) {
        bool any = false;
        for (int u = 0; u < inst.num_users() && !any; ++u) any = pair_holds(u, p);
        if (!any) return false;
      }
      return true;
  }
  return false;
}

ForwardResult forward_reach(const ConcreteInstance& inst, const GoalDecl& goal, long max_states) {
  ForwardResult res;
  struct Back {
    UaState parent;
    int rule;  // -1 for initial states
  };
  std::unordered_map<UaState, Back> seen;
  std::deque<std::pair<UaState, int>> queue;
  auto finish = [&](UaState s) {
    std::vector<RunStep> rev;
    while (true) {
      const Back& b = seen.at(s);
      rev.push_back(RunStep{b.rule < 0 ? "" : inst.rules[b.rule].label, s});
      if (b.rule < 0) break;
      s = b.parent;
    }
    res.run.assign(rev.rbegin(), rev.rend());
    res.reachable = true;
    res.states = static_cast<long>(seen.size());
    return res;
  };
  for (UaState s : inst.init) {
    if (!satisfies_constraints(inst, s) || seen.count(s)) continue;
    seen[s] = Back{s, -1};
    if (satisfies_goal(inst, goal, s)) return finish(s);
    queue.emplace_back(s, 0);
  }
  while (!queue.empty()) {
    auto [s, depth] = queue.front();
    queue.pop_front();
    res.depth = std::max(res.depth, depth);
    for (size_t i = 0; i < inst.rules.size(); ++i) {
      for (UaState t : step(inst, inst.rules[i], s)) {
        if (seen.count(t) || !satisfies_constraints(inst, t)) continue;
        seen[t] = Back{s, static_cast<int>(i)};
        if (satisfies_goal(inst, goal, t)) {
          res.depth = depth + 1;
          return finish(t);
        }
        if (static_cast<long>(seen.size()) > max_states)
          throw StateSpaceCap("forward search exceeded " + std::to_string(max_states) + " states");
        queue.emplace_back(t, depth + 1);
      }
    }
  }
  res.states = static_cast<long>(seen.size());
  return res;
}

std::vector<UaState> reachable_states(const ConcreteInstance& inst,
                                      const std::vector<UaState>& init, long max_states) {
  std::vector<UaState> order;
  std::unordered_map<UaState, bool> seen;
  for (UaState s : init) {
    if (!satisfies_constraints(inst, s) || seen.count(s)) continue;
    seen[s] = true;
    order.push_back(s);
  }
  for (size_t head = 0; head < order.size(); ++head) {
    UaState s = order[head];
    for (const auto& r : inst.rules)
      for (UaState t : step(inst, r, s)) {
        if (seen.count(t) || !satisfies_constraints(inst, t)) continue;
        seen[t] = true;
        order.push_back(t);
        if (static_cast<long>(order.size()) > max_states)
          throw StateSpaceCap("state space exceeded " + std::to_string(max_states));
      }
  }
  std::sort(order.begin(), order.end());
  return order;
}

bool replay_run(const ConcreteInstance& inst, const std::vector<RunStep>& run) {
  if (run.empty()) return false;
  if (std::find(inst.init.begin(), inst.init.end(), run[0].state) == inst.init.end()) return false;
  if (!satisfies_constraints(inst, run[0].state)) return false;
  for (size_t i = 1; i < run.size(); ++i) {
    const ConcreteRule* rule = nullptr;
    for (const auto& r : inst.rules)
      if (r.label == run[i].label) rule = &r;
    if (!rule) return false;
    auto succ = step(inst, *rule, run[i - 1].state);
    if (!std::binary_search(succ.begin(), succ.end(), run[i].state)) return false;
    if (!satisfies_constraints(inst, run[i].state)) return false;
  }
  return true;
}

Configuration to_configuration(const ConcreteInstance& inst, UaState s) {
  const Signature& sig = *inst.signature;
  std::vector<int> sizes(sig.num_sorts(), 1);
  for (SortId x = 0; x < sig.num_sorts(); ++x) {
    int n = static_cast<int>(sig.constants_of(x).size());
    sizes[x] = n;
  }
  Configuration c(inst.signature, sizes);
  for (SortId x = 0; x < sig.num_sorts(); ++x) {
    int k = 0;
    for (ConstId id : sig.constants_of(x)) c.set_constant(id, k++);
  }
  for (int a = 0; a < inst.num_roles(); ++a)
    for (int b = 0; b < inst.num_roles(); ++b)
      if (inst.geq[a][b]) c.set(kGeq, {a, b}, true);
  for (size_t p = 0; p < inst.perms.size(); ++p)
    for (int r = 0; r < inst.num_roles(); ++r)
      if (inst.pa[p][r]) c.set(kPa, {static_cast<int>(p), r}, true);
  for (int u = 0; u < inst.num_users(); ++u)
    for (int r = 0; r < inst.num_roles(); ++r)
      if (inst.has(s, u, r)) c.set(kUa, {u, r}, true);
  return c;
}

UaState from_configuration(const ConcreteInstance& inst, const Configuration& c) {
  const Signature& sig = c.sig();
  const auto& us = sig.constants_of(kUserSort);
  const auto& rs = sig.constants_of(kRoleSort);
  if (c.domain_size(kUserSort) != static_cast<int>(us.size()) ||
      c.domain_size(kRoleSort) != static_cast<int>(rs.size()))
    throw InternalError("configuration has unnamed users or roles");
  UaState s = 0;
  for (int u = 0; u < inst.num_users(); ++u)
    for (int r = 0; r < inst.num_roles(); ++r) {
      int eu = c.constant(*sig.find_constant(inst.users[u]));
      int er = c.constant(*sig.find_constant(inst.roles[r]));
      if (c.holds(kUa, {eu, er})) s |= UaState{1} << inst.bit(u, r);
    }
  return s;
}

std::vector<Configuration> step_symbolic(const TransitionRule& t, const Configuration& c) {
  std::vector<Configuration> out;
  std::vector<std::pair<int, int>> seen;
  auto lookup = [](const Env& env, const Term& v) {
    for (const auto& [k, e] : env)
      if (k == v) return e;
    throw InternalError("rule variable unbound");
  };
  for_each_solution(c, t.guard, [&](const Env& env) {
    int u = lookup(env, t.subject);
    int r = t.target.is_const() ? c.constant(t.target.id) : lookup(env, t.target);
    if (std::find(seen.begin(), seen.end(), std::make_pair(u, r)) == seen.end()) {
      seen.emplace_back(u, r);
      Configuration n = c;
      n.set(kUa, {u, r}, t.kind == TransitionRule::Kind::kAssign);
      out.push_back(std::move(n));
    }
    return true;
  });
  return out;
}

std::string state_to_string(const ConcreteInstance& inst, UaState s) {
  std::string out = "{";
  bool first = true;
  for (int u = 0; u < inst.num_users(); ++u)
    for (int r = 0; r < inst.num_roles(); ++r)
      if (inst.has(s, u, r)) {
        if (!first) out += ", ";
        first = false;
        out += "(" + inst.users[u] + "," + inst.roles[r] + ")";
      }
  return out + "}";
}

}  // namespace arbac
