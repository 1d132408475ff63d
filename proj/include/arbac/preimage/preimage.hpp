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

#ifndef ARBAC_PREIMAGE_PREIMAGE_HPP_
#define ARBAC_PREIMAGE_PREIMAGE_HPP_

#include <optional>
#include <vector>

#include "arbac/fol/syntax.hpp"
#include "arbac/policy/compile.hpp"

namespace arbac {

// States with a t-successor satisfying k. Every ua literal of k is read as
// the post-state relation and eliminated by case analysis on the update.
// With facts, each cube is simplified; otherwise only canonicalized.
ExistsFormula pre_image(const TransitionRule& t, const ExistsFormula& k,
                        const TheoryFacts* facts = nullptr);
ExistsFormula pre_image(const TransitionRule& t, const Cube& k,
                        const TheoryFacts* facts = nullptr);

// Union over rules; rule[i] is the index in ts producing cube i.
struct LabeledPreImage {
  ExistsFormula formula;
  std::vector<int> rule;
};
LabeledPreImage pre_image_all(const std::vector<TransitionRule>& ts, const ExistsFormula& k,
                              const TheoryFacts* facts = nullptr);

// Equivalent cube modulo the theory the facts were drawn from, or nullopt
// when the cube is unsatisfiable for a syntactic reason.
std::optional<Cube> simplify_cube(const Cube& c, const TheoryFacts& facts);

// Simplifies every cube, drops false ones, duplicates and cubes subsumed by
// another cube. Never increases the cube count.
ExistsFormula simplify(const ExistsFormula& k, const TheoryFacts& facts);

// Replaces every variable of a scalar sort by each value in turn.
ExistsFormula expand_closed(const ExistsFormula& k, const TheoryFacts& facts);

}  // namespace arbac

#endif  // ARBAC_PREIMAGE_PREIMAGE_HPP_
