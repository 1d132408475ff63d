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

#ifndef ARBAC_ANALYSES_ANALYSES_HPP_
#define ARBAC_ANALYSES_ANALYSES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "arbac/bsr/solver.hpp"
#include "arbac/fol/configuration.hpp"
#include "arbac/policy/compile.hpp"
#include "arbac/policy/decls.hpp"
#include "arbac/reach/breach.hpp"

namespace arbac {

struct InvariantResult {
  enum class Failure { kNone, kInit, kStep };
  bool holds = true;
  Failure which = Failure::kNone;
  std::string rule;  // label of the violating rule for kStep
  // Pre-state of the violation (the initial state for kInit).
  std::optional<Configuration> countermodel;
  std::optional<Configuration> successor;
  long solver_calls = 0;
};

// psi is an inductive invariant when In implies psi, and every rule maps a
// state satisfying the constraints and psi to one satisfying psi. Checked
// rule by rule; the first failing condition is reported.
InvariantResult check_inductive_invariant(const SymbolicPolicy& policy, const ForallFormula& psi,
                                          const SolverOptions& opts = {});

struct ContainmentResult {
  bool holds = false;
  ReachResult reach;  // of the augmented policy
  // A run ending where some user is in r1 but not (explicitly) in r2, with
  // the final probe step removed.
  std::optional<std::vector<TraceStep>> witness;
};

// Whether every reachable state puts each member of r1 into r2. Adds a role
// probe@ and an unconditional rule granting it to a user in r1 but not in
// r2, and asks whether probe@ is reachable. Throws HierarchyPresent for
// policies with a role hierarchy and std::invalid_argument when r1 == r2 or
// a role is unknown.
ContainmentResult role_containment(const PolicyDecls& decls, const std::string& r1,
                                   const std::string& r2, const ReachOptions& opts = {});

struct WPResult {
  ReachVerdict search = ReachVerdict::kUnreachable;  // of the backward search
  // Sorted role names; the sets are pairwise incomparable.
  std::vector<std::vector<std::string>> minimal_sets;
  long nodes = 0;
  long candidates = 0;
};

// Minimal sets S of roles such that the goal is reachable from the state in
// which user holds exactly S and nobody else holds anything. Runs the
// backward search with an empty initial condition to its fixpoint, then
// evaluates the fixpoint on every candidate state in order of size. Needs
// scalar User and Role sorts and at most 20 roles (UnsupportedInstance).
WPResult weakest_precondition(const PolicyDecls& decls, const std::string& user,
                              const ReachOptions& opts = {});
WPResult weakest_precondition(const SymbolicPolicy& policy, const ExistsFormula& goal,
                              const std::string& user, const ReachOptions& opts = {});

}  // namespace arbac

#endif  // ARBAC_ANALYSES_ANALYSES_HPP_
