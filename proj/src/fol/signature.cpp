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

#include "arbac/fol/signature.hpp"

#include "arbac/errors.hpp"

namespace arbac {

Signature::Signature() {
  add_sort("User", false);
  add_sort("Role", false);
  add_sort("Permission", false);
  add_predicate("ua", {kUserSort, kRoleSort});
  add_predicate("pa", {kPermSort, kRoleSort});
  add_predicate(">=", {kRoleSort, kRoleSort});
}

SortId Signature::add_sort(const std::string& name, bool param) {
  if (sort_index_.count(name)) throw SortError("duplicate sort " + name);
  SortId id = static_cast<SortId>(sorts_.size());
  sorts_.push_back({name, param});
  by_sort_.emplace_back();
  sort_index_[name] = id;
  return id;
}

ConstId Signature::add_constant(const std::string& name, SortId sort) {
  if (const_index_.count(name)) throw SortError("duplicate constant " + name);
  if (sort < 0 || sort >= num_sorts()) throw SortError("bad sort for " + name);
  ConstId id = static_cast<ConstId>(consts_.size());
  consts_.push_back({name, sort});
  by_sort_[sort].push_back(id);
  const_index_[name] = id;
  return id;
}

PredId Signature::add_predicate(const std::string& name,
                                std::vector<SortId> args) {
  if (pred_index_.count(name)) throw SortError("duplicate predicate " + name);
  for (SortId s : args) {
    if (s < 0 || s >= num_sorts()) throw SortError("bad sort in " + name);
  }
  PredId id = static_cast<PredId>(preds_.size());
  preds_.push_back({name, std::move(args)});
  pred_index_[name] = id;
  return id;
}

int Signature::arity(PredId p) const {
  if (p == kEq) return 2;
  return static_cast<int>(preds_.at(p).args.size());
}

std::optional<SortId> Signature::find_sort(const std::string& name) const {
  auto it = sort_index_.find(name);
  if (it == sort_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ConstId> Signature::find_constant(const std::string& name) const {
  auto it = const_index_.find(name);
  if (it == const_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<PredId> Signature::find_predicate(const std::string& name) const {
  auto it = pred_index_.find(name);
  if (it == pred_index_.end()) return std::nullopt;
  return it->second;
}

std::string Signature::pred_name(PredId p) const {
  if (p == kEq) return "=";
  return preds_.at(p).name;
}

}  // namespace arbac
