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

#ifndef ARBAC_FOL_ENUMERATE_HPP_
#define ARBAC_FOL_ENUMERATE_HPP_

#include <functional>
#include <string>
#include <vector>

#include "arbac/fol/configuration.hpp"
#include "arbac/fol/syntax.hpp"

namespace arbac {

// Streams every model of the axioms whose domain sizes are at most bound[s]
// (at least 1, or exactly 0 when the bound is 0). Named elements come first,
// in order of the constants denoting them, so structures differing only in
// how constants are labelled are produced once; permutations of unnamed
// elements may repeat. visit returns false to stop early. Returns false when
// stopped.
bool for_each_model(const SignaturePtr& sig, const std::vector<ForallFormula>& axioms,
                    const std::vector<int>& bound,
                    const std::function<bool(const Configuration&)>& visit);

struct EnumerationFilter {
  // Partial assignments under which one of these is already false are
  // skipped; the visitor still has to check them on complete structures.
  std::vector<ExistsFormula> required;
  // Predicates outside this set (when nonempty) stay empty.
  std::vector<bool> enumerate_predicate;
};

bool for_each_model(const SignaturePtr& sig, const std::vector<ForallFormula>& axioms,
                    const std::vector<int>& bound, const EnumerationFilter& filter,
                    const std::function<bool(const Configuration&)>& visit);

// Key equal for isomorphic configurations.
std::string isomorphism_key(const Configuration& c);

// All models of k and t within the bound, one per isomorphism class.
// Throws BoundTooSmall when a sort that carries constants or quantified
// variables is given bound 0.
std::vector<Configuration> formula_to_configs(const SignaturePtr& sig,
                                              const ExistsFormula& k,
                                              const UniversalTheory& t,
                                              const std::vector<int>& bound);

}  // namespace arbac

#endif  // ARBAC_FOL_ENUMERATE_HPP_
