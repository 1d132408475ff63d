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

#include "test_util.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "arbac/fol/enumerate.hpp"
#include "arbac/oracle/eval.hpp"
#include "arbac/policy/dsl.hpp"

namespace arbac::testing {

SignaturePtr small_signature(int users, int roles, int perms) {
  auto sig = std::make_shared<Signature>();
  for (int i = 0; i < users; ++i) sig->add_constant("U" + std::to_string(i), kUserSort);
  for (int i = 0; i < roles; ++i) sig->add_constant("R" + std::to_string(i), kRoleSort);
  for (int i = 0; i < perms; ++i) sig->add_constant("P" + std::to_string(i), kPermSort);
  return sig;
}

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Term random_term(std::mt19937_64& rng, const Signature& sig, SortId s,
                 const std::vector<Term>& vars) {
  std::vector<Term> pool;
  for (const auto& v : vars) {
    if (v.sort == s) pool.push_back(v);
  }
  for (ConstId c : sig.constants_of(s)) pool.push_back(Term::constant(s, c));
  if (pool.empty()) return Term::var(s, 0);
  return pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)];
}

Literal random_literal(std::mt19937_64& rng, const Signature& sig,
                       const std::vector<Term>& vars, bool with_eq) {
  int np = sig.num_predicates();
  int pick = uniform(rng, with_eq ? -1 : 0, np - 1);
  bool pos = uniform(rng, 0, 1) == 1;
  if (pick == -1) {
    SortId s = uniform(rng, 0, 1);
    return Literal::eq(random_term(rng, sig, s, vars), random_term(rng, sig, s, vars), pos);
  }
  std::vector<Term> args;
  for (SortId s : sig.predicate(pick).args) args.push_back(random_term(rng, sig, s, vars));
  return Literal::make(pos, pick, std::move(args));
}

}  // namespace

Cube random_cube(std::mt19937_64& rng, const Signature& sig, int max_vars, int max_lits,
                 bool with_eq) {
  Cube c;
  for (SortId s = 0; s < 3; ++s) {
    int n = uniform(rng, 0, max_vars);
    for (int i = 0; i < n; ++i) c.vars.push_back(Term::var(s, i));
  }
  int n = uniform(rng, 0, max_lits);
  for (int i = 0; i < n; ++i) c.lits.push_back(random_literal(rng, sig, c.vars, with_eq));
  // Variables that ended up unused still need a sort with a fallback term.
  std::vector<Term> used = vars_of(c.lits);
  c.vars = used;
  return c;
}

ExistsFormula random_exists(std::mt19937_64& rng, const Signature& sig, int max_cubes,
                            int max_vars, int max_lits) {
  ExistsFormula f;
  int n = uniform(rng, 0, max_cubes);
  for (int i = 0; i < n; ++i) f.cubes.push_back(random_cube(rng, sig, max_vars, max_lits));
  return f;
}

Formula random_matrix(std::mt19937_64& rng, const Signature& sig,
                      const std::vector<Term>& vars, int depth) {
  int k = depth <= 0 ? 0 : uniform(rng, 0, 2);
  if (k == 0) return Formula::literal(random_literal(rng, sig, vars, true));
  std::vector<Formula> kids;
  int n = uniform(rng, 1, 3);
  for (int i = 0; i < n; ++i) kids.push_back(random_matrix(rng, sig, vars, depth - 1));
  return k == 1 ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
}

std::vector<Configuration> all_configs(const SignaturePtr& sig, const std::vector<int>& bound,
                                       const UniversalTheory& t) {
  std::vector<Configuration> out;
  for_each_model(sig, t.axioms, bound, [&](const Configuration& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

std::vector<std::string> model_keys(const SignaturePtr& sig, const ExistsFormula& f,
                                    const UniversalTheory& t, const std::vector<int>& bound) {
  std::set<std::string> keys;
  for_each_model(sig, t.axioms, bound, [&](const Configuration& c) {
    if (eval_formula(c, f)) keys.insert(isomorphism_key(c));
    return true;
  });
  return {keys.begin(), keys.end()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string policy_path(const std::string& name) {
  return std::string(ARBAC_POLICY_DIR) + "/" + name;
}

SymbolicPolicy compile_shipped(const std::string& name, const CompileOptions& opts) {
  return compile_policy(load_policy_file(policy_path(name)), opts);
}

}  // namespace arbac::testing
