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

#ifndef ARBAC_ORACLE_EVAL_HPP_
#define ARBAC_ORACLE_EVAL_HPP_

#include <functional>
#include <utility>
#include <vector>

#include "arbac/fol/configuration.hpp"
#include "arbac/fol/syntax.hpp"

namespace arbac {

// Variable assignment for evaluating open formulae.
using Env = std::vector<std::pair<Term, int>>;

// Tarskian satisfaction by enumeration of the finite domains. Throws
// UninterpretedConstant for symbols outside the configuration's signature.
bool eval_formula(const Configuration& c, const Formula& f, const Env& env);
bool eval_formula(const Configuration& c, const Cube& k);
bool eval_formula(const Configuration& c, const ExistsFormula& f);
bool eval_formula(const Configuration& c, const ForallFormula& f);
bool eval_formula(const Configuration& c, const UniversalTheory& t);
bool eval_literal(const Configuration& c, const Literal& l, const Env& env);

// Every satisfying assignment of a cube's variables; stops when visit
// returns false.
template <typename Visit>
void for_each_solution(const Configuration& c, const Cube& k, Visit&& visit);

namespace detail {
bool cube_search(const Configuration& c, const Cube& k,
                 const std::function<bool(const Env&)>& visit);
}  // namespace detail

template <typename Visit>
void for_each_solution(const Configuration& c, const Cube& k, Visit&& visit) {
  detail::cube_search(c, k, std::function<bool(const Env&)>(visit));
}

}  // namespace arbac

#endif  // ARBAC_ORACLE_EVAL_HPP_
