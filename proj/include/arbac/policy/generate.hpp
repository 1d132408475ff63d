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

#ifndef ARBAC_POLICY_GENERATE_HPP_
#define ARBAC_POLICY_GENERATE_HPP_

#include <cstdint>

#include "arbac/policy/decls.hpp"

namespace arbac {

// Random instance family: scalar sorts, mixed assign and revoke rules, a
// goal naming one user and goal_size roles.
//
// Distributions, all uniform unless stated:
//   initial memberships: each pair independently with init_density;
//   hierarchy: hierarchy_pairs distinct pairs (ri, rj) with i < j;
//   smer: smer_pairs distinct unordered role pairs; memberships violating
//     them are removed from the initial state;
//   assign rules: target any role; an administrative role with probability
//     admin_prob; 0..precondition_width positive and 0..precondition_width
//     negative preconditions over roles other than the target; one trusted
//     user with probability trusted_prob (only with an administrator);
//   revoke rules: target any role, administrative role with admin_prob;
//   goal: user u0, goal_size distinct roles; with perms > 0 the first pair
//     also asks for permission p0, and every (p, r) is in pa with
//     probability 1/2.
struct GenParams {
  int users = 3;
  int roles = 8;
  int perms = 0;
  int assign_rules = 6;
  int revoke_rules = 3;
  int goal_size = 1;
  int precondition_width = 2;
  int smer_pairs = 0;
  int hierarchy_pairs = 0;
  double init_density = 0.15;
  double admin_prob = 0.5;
  double trusted_prob = 0.1;
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument on non-positive sizes or goal_size > roles.
PolicyDecls generate_policy(const GenParams& p);

// Parameters for instances within the explicit-state oracle's reach: 1..3
// users, 2..8 roles, 0..1 permissions, 1..8 assign and 0..4 revoke rules,
// goal size 1..3, 0..2 SMER pairs, and no hierarchy or 1..3 pairs with equal
// odds. The returned params carry the given seed.
GenParams oracle_scale_params(std::uint64_t seed);

}  // namespace arbac

#endif  // ARBAC_POLICY_GENERATE_HPP_
