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

#ifndef ARBAC_FOL_SEXPR_HPP_
#define ARBAC_FOL_SEXPR_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace arbac {

struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> items;

  static SExpr make_atom(std::string a) { return SExpr{true, std::move(a), {}}; }
  static SExpr make_list(std::vector<SExpr> xs) {
    return SExpr{false, {}, std::move(xs)};
  }
  bool is_list() const { return !is_atom; }
  bool is(std::string_view a) const { return is_atom && atom == a; }
  // List whose first item is the given atom.
  bool head_is(std::string_view a) const {
    return is_list() && !items.empty() && items[0].is(a);
  }
  bool operator==(const SExpr&) const = default;
};

// Parses a sequence of s-expressions; ';' starts a comment. Throws ParseError.
std::vector<SExpr> parse_sexprs(std::string_view text);
SExpr parse_sexpr(std::string_view text);

std::string to_string(const SExpr& e);

}  // namespace arbac

#endif  // ARBAC_FOL_SEXPR_HPP_
