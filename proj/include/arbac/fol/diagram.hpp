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

#ifndef ARBAC_FOL_DIAGRAM_HPP_
#define ARBAC_FOL_DIAGRAM_HPP_

#include "arbac/fol/configuration.hpp"
#include "arbac/fol/syntax.hpp"

namespace arbac {

// One variable per domain element (id = element), every predicate literal
// true in m, pairwise disequalities, and x = c for each named element.
ExistsFormula diagram_formula(const Configuration& m);

// Injective, sort-respecting map preserving constants and preserving and
// reflecting every predicate.
bool embeds(const Configuration& m, const Configuration& n);

}  // namespace arbac

#endif  // ARBAC_FOL_DIAGRAM_HPP_
