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

#ifndef ARBAC_FOL_CONFIGURATION_HPP_
#define ARBAC_FOL_CONFIGURATION_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "arbac/fol/signature.hpp"

namespace arbac {

// A finite structure: per-sort domains {0..n-1}, an element per constant and
// the extension of every predicate.
class Configuration {
 public:
  Configuration() = default;
  // All predicates empty and every constant mapped to element 0.
  Configuration(SignaturePtr sig, std::vector<int> domain_sizes);

  const SignaturePtr& signature() const { return sig_; }
  const Signature& sig() const { return *sig_; }
  int domain_size(SortId s) const { return dom_[s]; }
  const std::vector<int>& domain_sizes() const { return dom_; }

  int constant(ConstId c) const { return consts_.at(c); }
  void set_constant(ConstId c, int element);

  bool holds(PredId p, std::span<const int> args) const {
    return ext_[p][index(p, args)] != 0;
  }
  bool holds(PredId p, std::initializer_list<int> args) const {
    return holds(p, std::span<const int>(args.begin(), args.size()));
  }
  void set(PredId p, std::span<const int> args, bool value) {
    ext_[p][index(p, args)] = value;
  }
  void set(PredId p, std::initializer_list<int> args, bool value) {
    set(p, std::span<const int>(args.begin(), args.size()), value);
  }

  // Row-major position of a tuple in a predicate's extension.
  std::size_t index(PredId p, std::span<const int> args) const;
  std::size_t extension_size(PredId p) const { return ext_[p].size(); }
  const std::vector<std::uint8_t>& extension(PredId p) const { return ext_[p]; }
  std::vector<std::uint8_t>& mutable_extension(PredId p) { return ext_[p]; }
  // Decodes a row-major position back into a tuple.
  std::vector<int> tuple(PredId p, std::size_t index) const;

  // Name of an element: the first constant denoting it, else Sort#k.
  std::string element_name(SortId s, int e) const;

  bool operator==(const Configuration& o) const {
    return dom_ == o.dom_ && consts_ == o.consts_ && ext_ == o.ext_;
  }

 private:
  SignaturePtr sig_;
  std::vector<int> dom_;
  std::vector<int> consts_;
  std::vector<std::vector<std::uint8_t>> ext_;
};

std::string to_string(const Configuration& c);

}  // namespace arbac

#endif  // ARBAC_FOL_CONFIGURATION_HPP_
