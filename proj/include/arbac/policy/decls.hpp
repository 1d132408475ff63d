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

#ifndef ARBAC_POLICY_DECLS_HPP_
#define ARBAC_POLICY_DECLS_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arbac {

using NamePair = std::pair<std::string, std::string>;

struct SortSpec {
  std::string name;
  bool scalar = false;  // scalar-value theory: values distinct and exhaustive
  std::vector<std::string> values;

  bool operator==(const SortSpec&) const = default;
};

// A role constant, or a role schema applied to parameter terms.
struct RoleRef {
  std::string name;
  bool schema = false;
  std::vector<std::string> args;

  bool operator==(const RoleRef&) const = default;
};

struct RoleExpr {
  RoleRef role;
  bool negative = false;
  // Positive: direct membership instead of membership in a senior role.
  bool explicit_membership = false;
  // Negative implicit membership; rejected at compile time.
  bool implicit_negative = false;

  bool operator==(const RoleExpr&) const = default;
};

struct RuleDecl {
  enum class Kind { kAssign, kRevoke };
  Kind kind = Kind::kAssign;
  std::string label;
  std::optional<RoleRef> admin;
  std::vector<RoleExpr> pre;
  RoleRef target;
  std::vector<std::string> trusted;
  std::vector<NamePair> vars;  // (name, sort) of parameter variables

  bool operator==(const RuleDecl&) const = default;
};

struct GoalPair {
  enum class Cmp { kEq, kGeq };
  RoleRef role;
  Cmp cmp = Cmp::kEq;
  std::optional<std::string> perm;

  bool operator==(const GoalPair&) const = default;
};

struct GoalDecl {
  // kNamed: every pair for one named user; kShared: one unnamed user for
  // all pairs; kDistinct: an independent user per pair.
  enum class UserMode { kNamed, kShared, kDistinct };
  UserMode mode = UserMode::kDistinct;
  std::string user;
  std::vector<GoalPair> pairs;

  bool operator==(const GoalDecl&) const = default;
};

struct SchemaDecl {
  std::string name;
  std::vector<NamePair> params;  // (parameter name, sort)

  bool operator==(const SchemaDecl&) const = default;
};

struct PolicyDecls {
  std::vector<SortSpec> sorts;
  std::vector<NamePair> hierarchy;  // (senior, junior)
  std::vector<NamePair> pa;         // (permission, role)
  bool pa_declared = false;
  std::vector<NamePair> init;  // (user, role)
  std::optional<std::string> init_formula;
  std::vector<NamePair> smer;
  std::vector<std::string> constraints;
  std::vector<std::string> axioms;
  std::vector<SchemaDecl> schemas;
  std::vector<NamePair> schema_links;      // instances of first are in second
  std::vector<NamePair> schema_seniority;  // instances of first are senior
  std::vector<RuleDecl> rules;
  std::optional<GoalDecl> goal;

  bool operator==(const PolicyDecls&) const = default;
};

}  // namespace arbac

#endif  // ARBAC_POLICY_DECLS_HPP_
