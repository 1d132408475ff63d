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

#ifndef ARBAC_ORACLE_CONCRETE_HPP_
#define ARBAC_ORACLE_CONCRETE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arbac/fol/configuration.hpp"
#include "arbac/fol/syntax.hpp"
#include "arbac/policy/compile.hpp"
#include "arbac/policy/decls.hpp"

namespace arbac {

// A user-role assignment as a bitset; bit u * num_roles + r.
using UaState = std::uint64_t;

struct ConcreteRule {
  RuleDecl::Kind kind = RuleDecl::Kind::kAssign;
  std::string label;
  int admin = -1;  // role index, -1 when the rule has no administrator
  std::vector<int> pre_implicit;
  std::vector<int> pre_explicit;
  std::vector<int> pre_negative;
  int target = 0;
  std::vector<int> trusted;  // user indices barred from administering
};

// Explicit-state reading of a policy. Built directly from the declarations
// so that it shares nothing with the symbolic compilation.
struct ConcreteInstance {
  std::vector<std::string> users, roles, perms;
  std::vector<std::vector<bool>> geq;  // reflexive-transitive closure
  std::vector<std::vector<bool>> pa;   // [perm][role]
  bool pa_declared = false;
  std::vector<ConcreteRule> rules;
  std::vector<std::pair<int, int>> smer;
  std::vector<ForallFormula> constraints;  // other than smer
  std::vector<UaState> init;
  std::optional<GoalDecl> goal;
  SignaturePtr signature;  // for evaluating constraints and exporting states

  int num_users() const { return static_cast<int>(users.size()); }
  int num_roles() const { return static_cast<int>(roles.size()); }
  bool has(UaState s, int u, int r) const { return (s >> bit(u, r)) & 1u; }
  int bit(int u, int r) const { return u * num_roles() + r; }
  bool member(UaState s, int u, int r) const;  // implicit membership
};

// Requires scalar users and roles, at most 64 user-role pairs, no role
// schemas, and pa declared whenever the goal mentions a permission. Raw
// init formulae are enumerated when users * roles <= 20. Throws
// UnsupportedInstance otherwise.
ConcreteInstance make_concrete(const PolicyDecls& d);

// Successors of s under one rule over all administrator/subject choices,
// without constraint pruning. Duplicates removed, sorted.
std::vector<UaState> step(const ConcreteInstance& inst, const ConcreteRule& rule, UaState s);

bool satisfies_constraints(const ConcreteInstance& inst, UaState s);
bool satisfies_goal(const ConcreteInstance& inst, const GoalDecl& goal, UaState s);

struct RunStep {
  std::string label;  // empty for the initial state
  UaState state = 0;
};

struct ForwardResult {
  bool reachable = false;
  std::vector<RunStep> run;  // shortest run when reachable
  long states = 0;
  int depth = 0;  // BFS depth explored (diameter when unreachable)
};

// BFS from the constraint-satisfying initial states; successors violating a
// constraint are not enqueued. Throws StateSpaceCap past max_states.
ForwardResult forward_reach(const ConcreteInstance& inst, const GoalDecl& goal,
                            long max_states = 1L << 20);

// Every constraint-respecting state reachable from the given initial states.
std::vector<UaState> reachable_states(const ConcreteInstance& inst,
                                      const std::vector<UaState>& init,
                                      long max_states = 1L << 20);

// Checks a run element by element: each state follows from the previous by
// the labelled rule and satisfies the constraints.
bool replay_run(const ConcreteInstance& inst, const std::vector<RunStep>& run);

// The state as a configuration over inst.signature: scalar domains,
// closure of the hierarchy, pa (empty when undeclared), ua.
Configuration to_configuration(const ConcreteInstance& inst, UaState s);
// Inverse on the ua part; throws InternalError on non-scalar readings.
UaState from_configuration(const ConcreteInstance& inst, const Configuration& c);

// Successors of a configuration under a compiled rule: one per guard
// solution, ua updated at (subject, target).
std::vector<Configuration> step_symbolic(const TransitionRule& t, const Configuration& c);

std::string state_to_string(const ConcreteInstance& inst, UaState s);

}  // namespace arbac

#endif  // ARBAC_ORACLE_CONCRETE_HPP_
