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

#ifndef ARBAC_POLICY_COMPILE_HPP_
#define ARBAC_POLICY_COMPILE_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arbac/fol/syntax.hpp"
#include "arbac/policy/decls.hpp"

namespace arbac {

// Ground facts of the compiled theory that the simplifier may use without a
// solver call.
struct TheoryFacts {
  // Per sort: the values of its scalar-value theory, empty when open.
  std::vector<std::vector<ConstId>> scalar_values;
  // Reflexive-transitive closure of the declared hierarchy on role constants.
  std::set<std::pair<ConstId, ConstId>> geq;
  // True when >= is pinned to the closure plus identity.
  bool hierarchy_complete = false;
  std::set<std::pair<ConstId, ConstId>> pa;
  bool pa_complete = false;

  bool is_scalar(SortId s) const {
    return s < static_cast<SortId>(scalar_values.size()) && !scalar_values[s].empty();
  }
  // Constants of a scalar sort are pairwise distinct.
  bool distinct_constants(SortId s) const { return is_scalar(s); }
};

struct TransitionRule {
  enum class Kind { kAssign, kRevoke };
  Kind kind = Kind::kAssign;
  Cube guard;    // its vars are the existential prefix, subject included
  Term subject;  // user variable whose membership changes
  Term target;   // role constant, or a guard variable for schema targets
  std::string label;
};

struct SymbolicPolicy {
  SignaturePtr signature;
  UniversalTheory theory;
  ForallFormula init;
  std::vector<TransitionRule> transitions;
  std::vector<ForallFormula> constraints;
  // Role pairs from smer declarations; also present in constraints.
  std::vector<std::pair<ConstId, ConstId>> smer;
  std::optional<ExistsFormula> goal;
  TheoryFacts facts;
  std::vector<std::string> warnings;
};

struct CompileOptions {
  // Adds "not ua(u1, f)" to assignments of a role e for each SMER {e, f}.
  bool smer_guards = true;
  // Runs the solver once on the theory and throws InconsistentTheory.
  bool check_consistency = true;
};

// Throws CyclicHierarchy, UndeclaredConstant, NegativeUaStar, SortError,
// ParseError (malformed formula payloads), InconsistentTheory.
SymbolicPolicy compile_policy(const PolicyDecls& decls, const CompileOptions& opts = {});

// Membership of a user in a role or a senior of it: one fresh role variable
// with ua(user, v) and v >= role.
struct UaStar {
  Term var;
  std::vector<Literal> lits;
};
UaStar expand_ua_star(const Term& user, const Term& role, int fresh_role_id,
                      bool positive = true);

// Signature of a declaration set: sorts, constants, schema predicates.
SignaturePtr build_signature(const PolicyDecls& decls);

// Predicate and axioms for one schema over a signature that already declares
// its predicate (build_signature does).
struct SchemaCompilation {
  PredId pred = 0;
  std::vector<ForallFormula> axioms;
};
SchemaCompilation compile_role_schema(const Signature& sig, const SchemaDecl& schema,
                                      const PolicyDecls& decls);
// Predicate name for a schema, decorated with the parameter count when the
// name is overloaded.
std::string schema_predicate_name(const PolicyDecls& decls, const SchemaDecl& schema);

TransitionRule compile_can_assign(const Signature& sig, const PolicyDecls& decls,
                                  const RuleDecl& rule, const CompileOptions& opts = {});
TransitionRule compile_can_revoke(const Signature& sig, const PolicyDecls& decls,
                                  const RuleDecl& rule);
ExistsFormula compile_goal(const Signature& sig, const PolicyDecls& decls,
                           const GoalDecl& goal);

// Deterministic text dump of every compiled component.
std::string serialize_symbolic_policy(const SymbolicPolicy& p);

}  // namespace arbac

#endif  // ARBAC_POLICY_COMPILE_HPP_
