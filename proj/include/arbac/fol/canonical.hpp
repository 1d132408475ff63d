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

#ifndef ARBAC_FOL_CANONICAL_HPP_
#define ARBAC_FOL_CANONICAL_HPP_

#include <cstdint>

#include "arbac/fol/syntax.hpp"

namespace arbac {

// Orders the arguments of an equality literal.
Literal normalize_eq(const Literal& l);

// Sorted, duplicate-free literals over variables renamed per sort
// (u0, u1, ..., r0, ...). Alpha-variants map to the same cube unless a
// variable class is so symmetric that the permutation budget is exhausted.
Cube canonicalize(const Cube& c);

// Canonicalizes every cube and drops repeated cubes, keeping the first.
ExistsFormula canonicalize(const ExistsFormula& f);

// True when some substitution of general's variables by terms of specific
// maps every literal of general into specific; then specific implies general.
bool subsumes(const Cube& general, const Cube& specific);

// Literal features hashed into 64 bits. subsumes(g, s) implies
// (feature_mask(g) & ~feature_mask(s)) == 0, a cheap filter before matching.
std::uint64_t feature_mask(const Cube& c);
inline bool may_subsume(std::uint64_t general, std::uint64_t specific) {
  return (general & ~specific) == 0;
}

}  // namespace arbac

#endif  // ARBAC_FOL_CANONICAL_HPP_
