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

#include "arbac/oracle/brute_force.hpp"

#include <algorithm>

#include "arbac/fol/enumerate.hpp"
#include "arbac/oracle/eval.hpp"

namespace arbac {

std::vector<int> small_model_bound(const BSRProblem& p) {
  const Signature& sig = *p.signature;
  std::vector<int> bound(sig.num_sorts(), 0);
  for (SortId s = 0; s < sig.num_sorts(); ++s) {
    bound[s] = static_cast<int>(sig.constants_of(s).size());
  }
  for (const auto& f : p.exists_part) {
    std::vector<int> widest(sig.num_sorts(), 0);
    for (const auto& c : f.cubes) {
      std::vector<int> n(sig.num_sorts(), 0);
      for (const auto& v : c.vars) ++n[v.sort];
      for (SortId s = 0; s < sig.num_sorts(); ++s) widest[s] = std::max(widest[s], n[s]);
    }
    for (SortId s = 0; s < sig.num_sorts(); ++s) bound[s] += widest[s];
  }
  for (auto& b : bound) b = std::max(b, 1);
  return bound;
}

namespace {

void mark(const Formula& f, std::vector<bool>& used) {
  if (f.kind == Formula::Kind::kLit && f.lit.atom.pred != kEq) used[f.lit.atom.pred] = true;
  for (const auto& k : f.kids) mark(k, used);
}

}  // namespace

std::optional<Configuration> brute_force_sat(const BSRProblem& p) {
  EnumerationFilter filter;
  filter.required = p.exists_part;
  // Satisfiability does not depend on predicates the problem never mentions.
  filter.enumerate_predicate.assign(p.signature->num_predicates(), false);
  for (const auto& f : p.forall_part) mark(f.matrix, filter.enumerate_predicate);
  for (const auto& f : p.exists_part) {
    for (const auto& c : f.cubes) mark(cube_matrix(c), filter.enumerate_predicate);
  }
  std::optional<Configuration> found;
  for_each_model(p.signature, p.forall_part, small_model_bound(p), filter,
                 [&](const Configuration& c) {
                   for (const auto& f : p.exists_part) {
                     if (!eval_formula(c, f)) return true;
                   }
                   found = c;
                   return false;
                 });
  return found;
}

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::optional<Term> pick_term(std::mt19937_64& rng, const Signature& sig, SortId s,
               const std::vector<Term>& vars) {
  std::vector<Term> pool;
  for (const auto& v : vars) {
    if (v.sort == s) pool.push_back(v);
  }
  for (ConstId c : sig.constants_of(s)) pool.push_back(Term::constant(s, c));
  if (pool.empty()) return std::nullopt;
  return pool[pick(rng, 0, static_cast<int>(pool.size()) - 1)];
}

std::optional<Literal> pick_literal(std::mt19937_64& rng, const Signature& sig,
                                    const std::vector<Term>& vars) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    int pred = pick(rng, -1, sig.num_predicates() - 1);
    bool positive = pick(rng, 0, 1) == 1;
    std::vector<SortId> sorts;
    if (pred == kEq) {
      SortId s = pick(rng, 0, 2);
      sorts = {s, s};
    } else {
      sorts = sig.predicate(pred).args;
    }
    std::vector<Term> args;
    bool ok = true;
    for (SortId s : sorts) {
      auto t = pick_term(rng, sig, s, vars);
      if (!t) {
        ok = false;
        break;
      }
      args.push_back(*t);
    }
    if (ok) return Literal::make(positive, pred, std::move(args));
  }
  return std::nullopt;
}

Formula pick_matrix(std::mt19937_64& rng, const Signature& sig, const std::vector<Term>& vars,
                    int depth) {
  int k = depth <= 0 ? 0 : pick(rng, 0, 2);
  if (k == 0) {
    auto l = pick_literal(rng, sig, vars);
    return l ? Formula::literal(*l) : Formula::truth();
  }
  std::vector<Formula> kids;
  int n = pick(rng, 2, 3);
  for (int i = 0; i < n; ++i) kids.push_back(pick_matrix(rng, sig, vars, depth - 1));
  return k == 1 ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
}

}  // namespace

BSRProblem random_bsr_problem(std::mt19937_64& rng, const RandomProblemParams& params) {
  auto sig = std::make_shared<Signature>();
  std::vector<int> budget(3);
  for (SortId s = 0; s < 3; ++s) {
    int n = pick(rng, 0, std::min(2, params.max_universe));
    for (int i = 0; i < n; ++i) {
      sig->add_constant(std::string(1, "URP"[s]) + std::to_string(i), s);
    }
    budget[s] = params.max_universe - n;
  }
  if (pick(rng, 0, 1)) sig->add_predicate("adm", {kUserSort});
  if (pick(rng, 0, 1)) sig->add_predicate("flag", {});
  BSRProblem p;
  p.signature = sig;
  int ne = pick(rng, 0, params.max_exists);
  for (int i = 0; i < ne; ++i) {
    ExistsFormula f;
    int nc = pick(rng, 1, params.max_cubes);
    // Widest cube of this conjunct consumes the remaining universe budget.
    std::vector<int> width(3);
    for (SortId s = 0; s < 3; ++s) width[s] = pick(rng, 0, std::min(budget[s], 2));
    for (SortId s = 0; s < 3; ++s) budget[s] -= width[s];
    for (int j = 0; j < nc; ++j) {
      Cube c;
      for (SortId s = 0; s < 3; ++s) {
        int n = pick(rng, 0, width[s]);
        for (int v = 0; v < n; ++v) c.vars.push_back(Term::var(s, v));
      }
      int nl = pick(rng, 1, params.max_lits);
      for (int l = 0; l < nl; ++l) {
        if (auto lit = pick_literal(rng, *sig, c.vars)) c.lits.push_back(*lit);
      }
      c.vars = vars_of(c.lits);
      f.cubes.push_back(std::move(c));
    }
    p.exists_part.push_back(std::move(f));
  }
  int nf = pick(rng, 0, params.max_forall);
  for (int i = 0; i < nf; ++i) {
    std::vector<Term> vars;
    int count = pick(rng, 1, 3);
    for (int v = 0; v < count; ++v) vars.push_back(Term::var(pick(rng, 0, 2), v));
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    ForallFormula g{{}, pick_matrix(rng, *sig, vars, 2)};
    g.vars = free_vars(g.matrix);
    p.forall_part.push_back(std::move(g));
  }
  return p;
}

}  // namespace arbac
