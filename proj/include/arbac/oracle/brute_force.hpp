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

#ifndef ARBAC_ORACLE_BRUTE_FORCE_HPP_
#define ARBAC_ORACLE_BRUTE_FORCE_HPP_

#include <optional>
#include <random>
#include <vector>

#include "arbac/bsr/solver.hpp"

namespace arbac {

// Per-sort size such that a satisfiable problem has a model within it:
// declared constants plus, per existential conjunct, its widest cube.
std::vector<int> small_model_bound(const BSRProblem& p);

// Decides the problem by enumerating every structure within
// small_model_bound, independently of the grounding solver. Returns a model
// when one exists.
std::optional<Configuration> brute_force_sat(const BSRProblem& p);

struct RandomProblemParams {
  int max_universe = 3;
  int max_exists = 2;
  int max_cubes = 2;
  int max_forall = 3;
  int max_lits = 4;
};

// Random problem over the base signature plus a few random constants and an
// extra unary and nullary predicate; every sort's universe (constants plus
// Skolem constants) stays within max_universe.
BSRProblem random_bsr_problem(std::mt19937_64& rng, const RandomProblemParams& params = {});

}  // namespace arbac

#endif  // ARBAC_ORACLE_BRUTE_FORCE_HPP_
