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

#ifndef ARBAC_REACH_BOUNDED_HPP_
#define ARBAC_REACH_BOUNDED_HPP_

#include <vector>

#include "arbac/bsr/solver.hpp"
#include "arbac/fol/configuration.hpp"
#include "arbac/policy/compile.hpp"

namespace arbac {

// One step of a rule between two copies of ua: the guard on pre with the
// subject and target equated to the given constants, and the universal
// frame axiom fixing post as pre with that pair added or removed.
struct StepEncoding {
  Cube guard;
  ForallFormula frame;
};
StepEncoding encode_step(const TransitionRule& t, PredId pre, PredId post, const Term& subject,
                         const Term& target);

// A model over an extended signature restricted to the policy signature,
// reading ua from the given copy.
Configuration project_state(const Configuration& m, const SignaturePtr& sig, PredId ua_copy);

struct BoundedResult {
  Verdict verdict = Verdict::kUnsat;
  int bound = 0;
  // On sat: the states s0..s_bound over the policy signature, with the
  // label of the rule taken into each state after the first.
  std::vector<Configuration> states;
  std::vector<std::string> labels;
  SolverStats stats;
};

// Decides In(ua0) and, for each step i, iota(ua_i), tau(ua_i, ua_i+1) and
// iota(ua_i+1), and the goal on ua_bound, over bound+1 copies of ua. The
// disjunction over rules is encoded with one choice constant per step.
BoundedResult bounded_reach(const SymbolicPolicy& policy, const ExistsFormula& goal, int bound,
                            const SolverOptions& opts = {});

// Bounds 0..max_bound in order, stopping at the first sat one.
std::vector<BoundedResult> bounded_reach_upto(const SymbolicPolicy& policy,
                                              const ExistsFormula& goal, int max_bound,
                                              const SolverOptions& opts = {});

}  // namespace arbac

#endif  // ARBAC_REACH_BOUNDED_HPP_
