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

#include "arbac/oracle/eval.hpp"

#include <algorithm>

#include "arbac/errors.hpp"

namespace arbac {

namespace {

int value_of(const Configuration& c, const Term& t, const Env& env) {
  if (t.is_const()) {
    if (t.id < 0 || t.id >= c.sig().num_constants()) {
      throw UninterpretedConstant("constant not interpreted by the configuration");
    }
    return c.constant(t.id);
  }
  for (const auto& [v, e] : env) {
    if (v == t) return e;
  }
  throw InternalError("free variable during evaluation");
}

// Assignments to vars[0..n) in odometer order.
bool for_all_assignments(const Configuration& c, const std::vector<Term>& vars,
                         Env& env, std::size_t k,
                         const std::function<bool(Env&)>& f) {
  if (k == vars.size()) return f(env);
  int n = c.domain_size(vars[k].sort);
  for (int e = 0; e < n; ++e) {
    env.emplace_back(vars[k], e);
    bool go = for_all_assignments(c, vars, env, k + 1, f);
    env.pop_back();
    if (!go) return false;
  }
  return true;
}

}  // namespace

bool eval_literal(const Configuration& c, const Literal& l, const Env& env) {
  const auto& a = l.atom;
  bool v;
  if (a.pred == kEq) {
    v = value_of(c, a.args[0], env) == value_of(c, a.args[1], env);
  } else {
    if (a.pred < 0 || a.pred >= c.sig().num_predicates()) {
      throw UninterpretedConstant("predicate not interpreted by the configuration");
    }
    int buf[16];
    std::vector<int> big;
    int* args = buf;
    if (a.args.size() > 16) {
      big.resize(a.args.size());
      args = big.data();
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) args[i] = value_of(c, a.args[i], env);
    v = c.holds(a.pred, std::span<const int>(args, a.args.size()));
  }
  return v == l.positive;
}

bool eval_formula(const Configuration& c, const Formula& f, const Env& env) {
  switch (f.kind) {
    case Formula::Kind::kTrue:
      return true;
    case Formula::Kind::kFalse:
      return false;
    case Formula::Kind::kLit:
      return eval_literal(c, f.lit, env);
    case Formula::Kind::kAnd:
      for (const auto& k : f.kids) {
        if (!eval_formula(c, k, env)) return false;
      }
      return true;
    case Formula::Kind::kOr:
      for (const auto& k : f.kids) {
        if (eval_formula(c, k, env)) return true;
      }
      return false;
  }
  return false;
}

namespace detail {

bool cube_search(const Configuration& c, const Cube& k,
                 const std::function<bool(const Env&)>& visit) {
  // Literals are checked as soon as their last variable is bound.
  std::vector<Term> vars = k.vars;
  std::vector<std::vector<const Literal*>> bucket(vars.size() + 1);
  for (const auto& l : k.lits) {
    int last = -1;
    for (const auto& t : l.atom.args) {
      if (!t.is_var()) continue;
      auto it = std::find(vars.begin(), vars.end(), t);
      if (it == vars.end()) throw InternalError("unbound variable in cube");
      last = std::max(last, static_cast<int>(it - vars.begin()));
    }
    bucket[last + 1].push_back(&l);
  }
  Env env;
  for (const Literal* l : bucket[0]) {
    if (!eval_literal(c, *l, env)) return true;
  }
  bool stopped = false;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (stopped) return;
    if (i == vars.size()) {
      if (!visit(env)) stopped = true;
      return;
    }
    int n = c.domain_size(vars[i].sort);
    for (int e = 0; e < n && !stopped; ++e) {
      env.emplace_back(vars[i], e);
      bool ok = true;
      for (const Literal* l : bucket[i + 1]) {
        if (!eval_literal(c, *l, env)) {
          ok = false;
          break;
        }
      }
      if (ok) go(i + 1);
      env.pop_back();
    }
  };
  go(0);
  return !stopped;
}

}  // namespace detail

bool eval_formula(const Configuration& c, const Cube& k) {
  bool found = false;
  detail::cube_search(c, k, [&](const Env&) {
    found = true;
    return false;
  });
  return found;
}

bool eval_formula(const Configuration& c, const ExistsFormula& f) {
  for (const auto& k : f.cubes) {
    if (eval_formula(c, k)) return true;
  }
  return false;
}

bool eval_formula(const Configuration& c, const ForallFormula& f) {
  Env env;
  return for_all_assignments(c, f.vars, env, 0, [&](Env& e) {
    return eval_formula(c, f.matrix, e);
  });
}

bool eval_formula(const Configuration& c, const UniversalTheory& t) {
  for (const auto& a : t.axioms) {
    if (!eval_formula(c, a)) return false;
  }
  return true;
}

}  // namespace arbac
