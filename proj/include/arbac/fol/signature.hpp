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

#ifndef ARBAC_FOL_SIGNATURE_HPP_
#define ARBAC_FOL_SIGNATURE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace arbac {

using SortId = int;
using ConstId = int;
using PredId = int;

inline constexpr SortId kUserSort = 0;
inline constexpr SortId kRoleSort = 1;
inline constexpr SortId kPermSort = 2;

// Equality is not a table entry; it is available at every sort.
inline constexpr PredId kEq = -1;
inline constexpr PredId kUa = 0;
inline constexpr PredId kPa = 1;
inline constexpr PredId kGeq = 2;

struct SortDecl {
  std::string name;
  bool param = false;
};

struct ConstDecl {
  std::string name;
  SortId sort;
};

struct PredDecl {
  std::string name;
  std::vector<SortId> args;
};

// Sorts, constants and predicates of a many-sorted language without function
// symbols. User, Role, Permission, ua, pa and >= always exist.
class Signature {
 public:
  Signature();

  SortId add_sort(const std::string& name, bool param = true);
  ConstId add_constant(const std::string& name, SortId sort);
  PredId add_predicate(const std::string& name, std::vector<SortId> args);

  int num_sorts() const { return static_cast<int>(sorts_.size()); }
  int num_constants() const { return static_cast<int>(consts_.size()); }
  int num_predicates() const { return static_cast<int>(preds_.size()); }

  const SortDecl& sort(SortId s) const { return sorts_.at(s); }
  const ConstDecl& constant(ConstId c) const { return consts_.at(c); }
  const PredDecl& predicate(PredId p) const { return preds_.at(p); }
  int arity(PredId p) const;

  std::optional<SortId> find_sort(const std::string& name) const;
  std::optional<ConstId> find_constant(const std::string& name) const;
  std::optional<PredId> find_predicate(const std::string& name) const;

  // Constants of one sort, in declaration order.
  const std::vector<ConstId>& constants_of(SortId s) const {
    return by_sort_.at(s);
  }
  std::string pred_name(PredId p) const;

 private:
  std::vector<SortDecl> sorts_;
  std::vector<ConstDecl> consts_;
  std::vector<PredDecl> preds_;
  std::vector<std::vector<ConstId>> by_sort_;
  std::unordered_map<std::string, SortId> sort_index_;
  std::unordered_map<std::string, ConstId> const_index_;
  std::unordered_map<std::string, PredId> pred_index_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

}  // namespace arbac

#endif  // ARBAC_FOL_SIGNATURE_HPP_
