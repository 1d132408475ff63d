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

#ifndef ARBAC_BSR_SOLVER_HPP_
#define ARBAC_BSR_SOLVER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "arbac/fol/configuration.hpp"
#include "arbac/fol/syntax.hpp"

namespace arbac {

// Conjunction of exists-formulae and forall-formulae over one signature.
struct BSRProblem {
  SignaturePtr signature;
  std::vector<ExistsFormula> exists_part;
  std::vector<ForallFormula> forall_part;

  void add(const UniversalTheory& t) {
    forall_part.insert(forall_part.end(), t.axioms.begin(), t.axioms.end());
  }
  void add(ForallFormula f) { forall_part.push_back(std::move(f)); }
  void add(ExistsFormula f) { exists_part.push_back(std::move(f)); }
};

enum class Verdict { kSat, kUnsat, kTimeout };
const char* to_string(Verdict v);

struct Budget {
  long max_clauses = 4'000'000;
  long max_conflicts = 1'000'000;
};

enum class SatEngine { kCdcl, kDpll };

struct SolverOptions {
  Budget budget;
  SatEngine engine = SatEngine::kCdcl;
  // Re-evaluates the problem on every returned model and throws
  // InternalError on a mismatch.
  bool verify_model = false;
  // Universal clauses are instantiated on demand, only where a candidate
  // model violates them. Other universal formulas are grounded eagerly.
  bool lazy_instantiation = true;
  // Optional external SMT solver consulted on every call; disagreements are
  // counted in the stats.
  std::string external_solver;
};

struct SolverStats {
  long ground_clauses = 0;
  long sat_vars = 0;
  long decisions = 0;
  long conflicts = 0;
  long refinements = 0;
  long lazy_instances = 0;
  int universe = 0;
  double wall_ms = 0;
  int external_disagreements = 0;
};

struct SatResult {
  Verdict verdict = Verdict::kUnsat;
  std::optional<Configuration> model;
  SolverStats stats;
};

// Skolemizes the existential part, grounds the universal part over the
// resulting finite universe, and decides the propositional abstraction.
// Equality is handled by model-guided refinement: transitivity and
// congruence instances are added when a candidate model violates them.
// Lazily instantiated clauses are refined the same way.
SatResult check_sat(const BSRProblem& p, const SolverOptions& opts = {});

// f and extra and not g is unsatisfiable modulo t. Throws SolverTimeout.
bool entails(const SignaturePtr& sig, const ExistsFormula& f, const ExistsFormula& g,
             const UniversalTheory& t, const std::vector<ForallFormula>& extra = {},
             const SolverOptions& opts = {});

// SMT-LIB 2 script in the UF logic with declared sorts.
std::string export_smtlib(const BSRProblem& p);

// Runs an external solver on a script; nullopt if it cannot be run or
// answers neither sat nor unsat.
std::optional<Verdict> run_external_solver(const std::string& path, const std::string& script);

// The solver named by the ARBAC_SMT_SOLVER environment variable, else "z3"
// when found on PATH, else empty.
std::string default_external_solver();

}  // namespace arbac

#endif  // ARBAC_BSR_SOLVER_HPP_
