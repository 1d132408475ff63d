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

#ifndef ARBAC_POLICY_DSL_HPP_
#define ARBAC_POLICY_DSL_HPP_

#include <string>

#include "arbac/policy/decls.hpp"

namespace arbac {

// Line-oriented policy language with s-expression payloads; see
// docs/policy-language.md. Throws ParseError with a line number.
PolicyDecls parse_policy(const std::string& text);

// Canonical text form; parse_policy(serialize_policy(d)) == d.
std::string serialize_policy(const PolicyDecls& d);

// JSON mirror of the same declarations.
PolicyDecls parse_policy_json(const std::string& text);
std::string policy_to_json(const PolicyDecls& d);

// Chooses the JSON reader for text starting with '{'.
PolicyDecls parse_policy_any(const std::string& text);
PolicyDecls load_policy_file(const std::string& path);

}  // namespace arbac

#endif  // ARBAC_POLICY_DSL_HPP_
