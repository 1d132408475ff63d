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

#ifndef ARBAC_FOL_PRINT_HPP_
#define ARBAC_FOL_PRINT_HPP_

#include <string>

#include "arbac/fol/sexpr.hpp"
#include "arbac/fol/syntax.hpp"

namespace arbac {

// S-expression text for terms and formulae. Variables print as a sort prefix
// plus their id: u0, r1, p0, and the lowercased sort name for parameters.
std::string var_name(const Signature& sig, const Term& v);
std::string to_string(const Signature& sig, const Term& t);
std::string to_string(const Signature& sig, const Literal& l);
std::string to_string(const Signature& sig, const Cube& c);
std::string to_string(const Signature& sig, const ExistsFormula& f);
std::string to_string(const Signature& sig, const Formula& f);
std::string to_string(const Signature& sig, const ForallFormula& f);

// Parsers accept the printed forms plus not, =>, <=>, distinct, and nested
// and/or in bodies. Quantifiers are only allowed at the top.
Cube parse_cube(const Signature& sig, const SExpr& e);
ExistsFormula parse_exists(const Signature& sig, const SExpr& e);
ForallFormula parse_forall(const Signature& sig, const SExpr& e);
ExistsFormula parse_exists(const Signature& sig, const std::string& text);
ForallFormula parse_forall(const Signature& sig, const std::string& text);

}  // namespace arbac

#endif  // ARBAC_FOL_PRINT_HPP_
