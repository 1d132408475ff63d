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

#ifndef ARBAC_TESTS_TEST_UTIL_HPP_
#define ARBAC_TESTS_TEST_UTIL_HPP_

#include <random>
#include <string>
#include <vector>

#include "arbac/fol/configuration.hpp"
#include "arbac/fol/syntax.hpp"
#include "arbac/policy/compile.hpp"

namespace arbac::testing {

// Signature with constants U0.., R0.., P0.. of the base sorts.
SignaturePtr small_signature(int users, int roles, int perms);

// Random well-sorted cube over at most max_vars variables per sort.
Cube random_cube(std::mt19937_64& rng, const Signature& sig, int max_vars, int max_lits,
                 bool with_eq = true);
ExistsFormula random_exists(std::mt19937_64& rng, const Signature& sig, int max_cubes,
                            int max_vars, int max_lits);
// Random quantifier-free matrix over the given variables.
Formula random_matrix(std::mt19937_64& rng, const Signature& sig,
                      const std::vector<Term>& vars, int depth);

// Every configuration (no axioms) within the bound.
std::vector<Configuration> all_configs(const SignaturePtr& sig, const std::vector<int>& bound,
                                       const UniversalTheory& t = {});

// Models of f within the bound, as isomorphism keys.
std::vector<std::string> model_keys(const SignaturePtr& sig, const ExistsFormula& f,
                                    const UniversalTheory& t, const std::vector<int>& bound);

std::string read_file(const std::string& path);
std::string policy_path(const std::string& name);
// Parses and compiles a shipped policy by file name.
SymbolicPolicy compile_shipped(const std::string& name, const CompileOptions& opts = {});

}  // namespace arbac::testing

#endif  // ARBAC_TESTS_TEST_UTIL_HPP_
