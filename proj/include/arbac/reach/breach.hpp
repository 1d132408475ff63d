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

#ifndef ARBAC_REACH_BREACH_HPP_
#define ARBAC_REACH_BREACH_HPP_

#include <optional>
#include <string>
#include <vector>

#include "arbac/bsr/solver.hpp"
#include "arbac/fol/configuration.hpp"
#include "arbac/fol/syntax.hpp"
#include "arbac/policy/compile.hpp"

namespace arbac {

enum class ReachVerdict { kReachable, kUnreachable, kInconclusive };
const char* to_string(ReachVerdict v);

enum class FixpointMode {
  // One cube at a time, each tested against the accumulated B.
  kPerTransition,
  // The whole frontier P tested at once, as in the textbook loop.
  kMonolithic,
};

struct ReachOptions {
  FixpointMode mode = FixpointMode::kPerTransition;
  // Conjoins the constraints at the safety test as well.
  bool strict_initial = false;
  bool simplify = true;
  // Skip the solver when a cube of B subsumes the new cube.
  bool syntactic_subsumption = true;
  long max_iterations = 10'000;
  long max_cubes = 200'000;
  // Wall-clock budget in seconds; 0 means none.
  double timeout_s = 0;
  bool extract_trace = true;
  SolverOptions solver;
};

struct IterationStats {
  int iteration = 0;
  long frontier = 0;   // cubes examined at this depth
  long added = 0;      // cubes that entered B
  long subsumed = 0;   // dropped by syntactic subsumption
  long covered = 0;    // dropped by a solver fixpoint test
  long solver_calls = 0;
  double wall_ms = 0;
};

// A cube of B with the rule and parent cube it was obtained from.
struct TaggedCube {
  Cube cube;
  int parent = -1;  // index into ReachResult::cubes; -1 for goal cubes
  int rule = -1;    // index into the policy's transitions
  int depth = 0;
};

struct TraceStep {
  std::string label;  // empty for the initial state
  Configuration state;
};

struct ReachResult {
  ReachVerdict verdict = ReachVerdict::kInconclusive;
  // Deepest completed iteration; a reachable verdict at n means a run of n
  // transitions.
  int steps = 0;
  std::vector<TaggedCube> cubes;  // every cube that entered B, or P when reachable
  std::optional<ExistsFormula> fixpoint;
  std::optional<std::vector<TraceStep>> trace;
  std::vector<IterationStats> stats;
  long solver_calls = 0;
  std::string reason;  // why the run is inconclusive
  double wall_ms = 0;
};

ReachResult breach(const SymbolicPolicy& policy, const ExistsFormula& goal,
                   const ReachOptions& opts = {});
// Uses the policy's goal; throws InternalError when there is none.
ReachResult breach(const SymbolicPolicy& policy, const ReachOptions& opts = {});

// Run from an initial state into the goal, following the provenance chain of
// cubes[index]. The first state is a model of In and the cube. Throws
// InternalError when no step can be instantiated.
std::vector<TraceStep> extract_trace(const SymbolicPolicy& policy,
                                     const std::vector<TaggedCube>& cubes, int index,
                                     const ExistsFormula& goal, const ReachOptions& opts = {});

// The single problem checked at the safety test, for reuse by callers.
BSRProblem safety_problem(const SymbolicPolicy& policy, const ExistsFormula& p, bool strict);

}  // namespace arbac

#endif  // ARBAC_REACH_BREACH_HPP_
