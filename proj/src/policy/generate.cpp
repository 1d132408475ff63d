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

#include "arbac/policy/generate.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace arbac {
namespace {

std::string role(int i) { return "r" + std::to_string(i); }
std::string user(int i) { return "u" + std::to_string(i); }

}  // namespace

PolicyDecls generate_policy(const GenParams& p) {
  if (p.users < 1 || p.roles < 1 || p.perms < 0 || p.goal_size < 1 || p.goal_size > p.roles ||
      p.assign_rules < 0 || p.revoke_rules < 0 || p.precondition_width < 0)
    throw std::invalid_argument("invalid generator parameters");
  std::mt19937_64 rng(p.seed);
  auto coin = [&](double prob) { return std::bernoulli_distribution(prob)(rng); };
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };

  PolicyDecls d;
  SortSpec us{"User", true, {}}, rs{"Role", true, {}}, ps{"Permission", p.perms > 0, {}};
  for (int i = 0; i < p.users; ++i) us.values.push_back(user(i));
  for (int i = 0; i < p.roles; ++i) rs.values.push_back(role(i));
  for (int i = 0; i < p.perms; ++i) ps.values.push_back("p" + std::to_string(i));
  d.sorts = {us, rs, ps};

  std::set<std::pair<int, int>> hier;
  int max_hier = p.roles * (p.roles - 1) / 2;
  while (static_cast<int>(hier.size()) < std::min(p.hierarchy_pairs, max_hier)) {
    int a = pick(p.roles), b = pick(p.roles);
    if (a < b) hier.insert({a, b});
  }
  for (auto [a, b] : hier) d.hierarchy.push_back({role(a), role(b)});

  std::set<std::pair<int, int>> smer;
  while (static_cast<int>(smer.size()) < std::min(p.smer_pairs, max_hier)) {
    int a = pick(p.roles), b = pick(p.roles);
    if (a < b) smer.insert({a, b});
  }
  for (auto [a, b] : smer) d.smer.push_back({role(a), role(b)});

  for (int u = 0; u < p.users; ++u) {
    std::vector<bool> held(p.roles, false);
    for (int r = 0; r < p.roles; ++r) held[r] = coin(p.init_density);
    for (auto [a, b] : smer)
      if (held[a] && held[b]) held[b] = false;
    for (int r = 0; r < p.roles; ++r)
      if (held[r]) d.init.push_back({user(u), role(r)});
  }

  if (p.perms > 0) {
    d.pa_declared = true;
    for (int q = 0; q < p.perms; ++q)
      for (int r = 0; r < p.roles; ++r)
        if (coin(0.5)) d.pa.push_back({"p" + std::to_string(q), role(r)});
  }

  auto rule = [&](RuleDecl::Kind kind) {
    RuleDecl rd;
    rd.kind = kind;
    int target = pick(p.roles);
    rd.target = RoleRef{role(target), false, {}};
    if (coin(p.admin_prob)) {
      rd.admin = RoleRef{role(pick(p.roles)), false, {}};
      if (kind == RuleDecl::Kind::kAssign && coin(p.trusted_prob))
        rd.trusted.push_back(user(pick(p.users)));
    }
    if (kind == RuleDecl::Kind::kAssign) {
      std::vector<int> others;
      for (int r = 0; r < p.roles; ++r)
        if (r != target) others.push_back(r);
      std::shuffle(others.begin(), others.end(), rng);
      int npos = std::uniform_int_distribution<int>(0, p.precondition_width)(rng);
      int nneg = std::uniform_int_distribution<int>(0, p.precondition_width)(rng);
      npos = std::min<int>(npos, static_cast<int>(others.size()));
      nneg = std::min<int>(nneg, static_cast<int>(others.size()) - npos);
      for (int i = 0; i < npos + nneg; ++i) {
        RoleExpr e;
        e.role = RoleRef{role(others[i]), false, {}};
        e.negative = i >= npos;
        rd.pre.push_back(e);
      }
    }
    return rd;
  };
  for (int i = 0; i < p.assign_rules; ++i) d.rules.push_back(rule(RuleDecl::Kind::kAssign));
  for (int i = 0; i < p.revoke_rules; ++i) d.rules.push_back(rule(RuleDecl::Kind::kRevoke));

  GoalDecl g;
  g.mode = GoalDecl::UserMode::kNamed;
  g.user = user(0);
  std::vector<int> all(p.roles);
  for (int r = 0; r < p.roles; ++r) all[r] = r;
  std::shuffle(all.begin(), all.end(), rng);
  for (int i = 0; i < p.goal_size; ++i) {
    GoalPair gp;
    gp.role = RoleRef{role(all[i]), false, {}};
    if (i == 0 && p.perms > 0) gp.perm = "p0";
    g.pairs.push_back(gp);
  }
  d.goal = g;
  return d;
}

GenParams oracle_scale_params(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto u = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  GenParams g;
  g.users = u(1, 3);
  g.roles = u(2, 8);
  g.perms = u(0, 1);
  g.assign_rules = u(1, 8);
  g.revoke_rules = u(0, 4);
  g.goal_size = std::min(g.roles, u(1, 3));
  g.smer_pairs = u(0, 2);
  g.hierarchy_pairs = u(0, 1) ? 0 : u(1, 3);
  g.seed = seed;
  return g;
}

}  // namespace arbac
