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

#include "arbac/fol/enumerate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arbac/errors.hpp"
#include "arbac/oracle/eval.hpp"

namespace arbac {

namespace {

enum Tv : std::uint8_t { kF = 0, kT = 1, kU = 2 };

// Kleene evaluation over a configuration whose predicate bits may be unknown.
class Partial {
 public:
  Partial(const Configuration& c, const std::vector<std::vector<std::uint8_t>>& known)
      : c_(c), known_(known) {}

  int value(const Term& t, const Env& env) const {
    if (t.is_const()) return c_.constant(t.id);
    for (const auto& [v, e] : env) {
      if (v == t) return e;
    }
    throw InternalError("free variable during enumeration");
  }

  Tv literal(const Literal& l, const Env& env) const {
    const auto& a = l.atom;
    if (a.pred == kEq) {
      bool v = value(a.args[0], env) == value(a.args[1], env);
      return v == l.positive ? kT : kF;
    }
    int buf[16];
    for (std::size_t i = 0; i < a.args.size(); ++i) buf[i] = value(a.args[i], env);
    std::size_t idx = c_.index(a.pred, std::span<const int>(buf, a.args.size()));
    if (!known_[a.pred][idx]) return kU;
    bool v = c_.extension(a.pred)[idx] != 0;
    return v == l.positive ? kT : kF;
  }

  Tv formula(const Formula& f, const Env& env) const {
    switch (f.kind) {
      case Formula::Kind::kTrue:
        return kT;
      case Formula::Kind::kFalse:
        return kF;
      case Formula::Kind::kLit:
        return literal(f.lit, env);
      case Formula::Kind::kAnd: {
        Tv acc = kT;
        for (const auto& k : f.kids) {
          Tv v = formula(k, env);
          if (v == kF) return kF;
          if (v == kU) acc = kU;
        }
        return acc;
      }
      case Formula::Kind::kOr: {
        Tv acc = kF;
        for (const auto& k : f.kids) {
          Tv v = formula(k, env);
          if (v == kT) return kT;
          if (v == kU) acc = kU;
        }
        return acc;
      }
    }
    return kU;
  }

  Tv cube(const Cube& k) const {
    Env env;
    return cube_at(k, env, 0);
  }

  Tv exists(const ExistsFormula& f) const {
    Tv acc = kF;
    for (const auto& k : f.cubes) {
      Tv v = cube(k);
      if (v == kT) return kT;
      if (v == kU) acc = kU;
    }
    return acc;
  }

  // False iff some instance of the axiom is already false.
  bool possible(const ForallFormula& a) const {
    Env env;
    return instances(a, env, 0);
  }

 private:
  Tv cube_at(const Cube& c, Env& env, std::size_t k) const {
    if (k == c.vars.size()) {
      Tv acc = kT;
      for (const auto& l : c.lits) {
        Tv v = literal(l, env);
        if (v == kF) return kF;
        if (v == kU) acc = kU;
      }
      return acc;
    }
    Tv acc = kF;
    int n = c_.domain_size(c.vars[k].sort);
    for (int e = 0; e < n; ++e) {
      env.emplace_back(c.vars[k], e);
      Tv v = cube_at(c, env, k + 1);
      env.pop_back();
      if (v == kT) return kT;
      if (v == kU) acc = kU;
    }
    return acc;
  }

  bool instances(const ForallFormula& a, Env& env, std::size_t k) const {
    if (k == a.vars.size()) return formula(a.matrix, env) != kF;
    int n = c_.domain_size(a.vars[k].sort);
    for (int e = 0; e < n; ++e) {
      env.emplace_back(a.vars[k], e);
      bool ok = instances(a, env, k + 1);
      env.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  const Configuration& c_;
  const std::vector<std::vector<std::uint8_t>>& known_;
};

bool mentions_any_predicate(const Formula& f) {
  if (f.kind == Formula::Kind::kLit) return f.lit.atom.pred != kEq;
  for (const auto& k : f.kids) {
    if (mentions_any_predicate(k)) return true;
  }
  return false;
}

class Enumerator {
 public:
  Enumerator(const SignaturePtr& sig, const std::vector<ForallFormula>& axioms,
             const EnumerationFilter& filter,
             const std::function<bool(const Configuration&)>& visit)
      : sig_(sig), axioms_(axioms), filter_(filter), visit_(visit) {
    by_pred_.resize(sig->num_predicates());
    for (std::size_t i = 0; i < axioms.size(); ++i) {
      if (!mentions_any_predicate(axioms[i].matrix)) {
        pure_.push_back(i);
        continue;
      }
      for (PredId p = 0; p < sig->num_predicates(); ++p) {
        if (mentions_predicate(axioms[i].matrix, p)) by_pred_[p].push_back(i);
      }
    }
  }

  bool run(const std::vector<int>& sizes) {
    for (SortId s = 0; s < sig_->num_sorts(); ++s) {
      if (sizes[s] == 0 && !sig_->constants_of(s).empty()) return true;
    }
    cfg_ = Configuration(sig_, sizes);
    known_.assign(sig_->num_predicates(), {});
    for (PredId p = 0; p < sig_->num_predicates(); ++p) {
      known_[p].assign(cfg_.extension_size(p), 0);
    }
    max_used_.assign(sig_->num_sorts(), -1);
    return constants(0);
  }

 private:
  bool constants(ConstId k) {
    if (k == sig_->num_constants()) {
      Partial part(cfg_, known_);
      for (std::size_t i : pure_) {
        if (!part.possible(axioms_[i])) return true;
      }
      for (const auto& a : axioms_) {
        if (!part.possible(a)) return true;
      }
      for (const auto& f : filter_.required) {
        if (part.exists(f) == kF) return true;
      }
      return bits(0, 0);
    }
    SortId s = sig_->constant(k).sort;
    int saved = max_used_[s];
    int top = std::min(cfg_.domain_size(s) - 1, saved + 1);
    for (int e = 0; e <= top; ++e) {
      cfg_.set_constant(k, e);
      max_used_[s] = std::max(saved, e);
      bool go = constants(k + 1);
      max_used_[s] = saved;
      if (!go) return false;
    }
    return true;
  }

  bool bits(PredId p, std::size_t i) {
    while (p < sig_->num_predicates() &&
           (i == cfg_.extension_size(p) || !enumerated(p))) {
      ++p;
      i = 0;
    }
    if (p == sig_->num_predicates()) return visit_(cfg_);
    known_[p][i] = 1;
    for (int v = 0; v < 2; ++v) {
      cfg_.mutable_extension(p)[i] = static_cast<std::uint8_t>(v);
      Partial part(cfg_, known_);
      bool ok = true;
      for (std::size_t a : by_pred_[p]) {
        if (!part.possible(axioms_[a])) {
          ok = false;
          break;
        }
      }
      for (std::size_t f = 0; ok && f < filter_.required.size(); ++f) {
        if (part.exists(filter_.required[f]) == kF) ok = false;
      }
      if (ok && !bits(p, i + 1)) {
        known_[p][i] = 0;
        cfg_.mutable_extension(p)[i] = 0;
        return false;
      }
    }
    known_[p][i] = 0;
    cfg_.mutable_extension(p)[i] = 0;
    return true;
  }

  bool enumerated(PredId p) const {
    return filter_.enumerate_predicate.empty() || filter_.enumerate_predicate[p];
  }

  SignaturePtr sig_;
  const std::vector<ForallFormula>& axioms_;
  const EnumerationFilter& filter_;
  const std::function<bool(const Configuration&)>& visit_;
  std::vector<std::size_t> pure_;
  std::vector<std::vector<std::size_t>> by_pred_;
  Configuration cfg_;
  std::vector<std::vector<std::uint8_t>> known_;
  std::vector<int> max_used_;
};

}  // namespace

bool for_each_model(const SignaturePtr& sig, const std::vector<ForallFormula>& axioms,
                    const std::vector<int>& bound,
                    const std::function<bool(const Configuration&)>& visit) {
  return for_each_model(sig, axioms, bound, EnumerationFilter{}, visit);
}

bool for_each_model(const SignaturePtr& sig, const std::vector<ForallFormula>& axioms,
                    const std::vector<int>& bound, const EnumerationFilter& filter,
                    const std::function<bool(const Configuration&)>& visit) {
  int ns = sig->num_sorts();
  if (static_cast<int>(bound.size()) != ns) throw SortError("one bound per sort expected");
  std::vector<int> sizes(ns);
  for (SortId s = 0; s < ns; ++s) sizes[s] = bound[s] == 0 ? 0 : 1;
  Enumerator en(sig, axioms, filter, visit);
  while (true) {
    if (!en.run(sizes)) return false;
    SortId s = 0;
    for (; s < ns; ++s) {
      if (sizes[s] < bound[s]) {
        ++sizes[s];
        break;
      }
      sizes[s] = bound[s] == 0 ? 0 : 1;
    }
    if (s == ns) return true;
  }
}

std::string isomorphism_key(const Configuration& c) {
  const Signature& sig = c.sig();
  int ns = sig.num_sorts();
  // Named elements are labelled by their first constant; the rest permute.
  std::vector<std::vector<int>> base(ns), free(ns);
  for (SortId s = 0; s < ns; ++s) {
    std::vector<int> label(c.domain_size(s), -1);
    int next = 0;
    for (ConstId k : sig.constants_of(s)) {
      int e = c.constant(k);
      if (label[e] == -1) label[e] = next++;
    }
    for (int e = 0; e < c.domain_size(s); ++e) {
      if (label[e] == -1) free[s].push_back(e);
    }
    base[s] = label;
    std::sort(free[s].begin(), free[s].end());
  }
  std::string best;
  bool have = false;
  std::vector<std::vector<int>> perm = free;
  long budget = 40320;
  while (true) {
    std::vector<std::vector<int>> label = base;
    for (SortId s = 0; s < ns; ++s) {
      int next = c.domain_size(s) - static_cast<int>(free[s].size());
      for (int e : perm[s]) label[s][e] = next++;
    }
    std::string key;
    for (SortId s = 0; s < ns; ++s) key += std::to_string(c.domain_size(s)) + ",";
    key += "|";
    for (ConstId k = 0; k < sig.num_constants(); ++k) {
      key += std::to_string(label[sig.constant(k).sort][c.constant(k)]) + ",";
    }
    for (PredId p = 0; p < sig.num_predicates(); ++p) {
      const auto& sorts = sig.predicate(p).args;
      std::vector<std::uint8_t> bitsv(c.extension_size(p), 0);
      std::vector<int> img(sorts.size());
      for (std::size_t i = 0; i < c.extension_size(p); ++i) {
        if (!c.extension(p)[i]) continue;
        auto t = c.tuple(p, i);
        for (std::size_t k = 0; k < t.size(); ++k) img[k] = label[sorts[k]][t[k]];
        bitsv[c.index(p, img)] = 1;
      }
      key += "|";
      for (auto b : bitsv) key += static_cast<char>('0' + b);
    }
    if (!have || key < best) {
      best = std::move(key);
      have = true;
    }
    if (--budget <= 0) break;
    SortId s = 0;
    for (; s < ns; ++s) {
      if (std::next_permutation(perm[s].begin(), perm[s].end())) break;
    }
    if (s == ns) break;
  }
  return best;
}

std::vector<Configuration> formula_to_configs(const SignaturePtr& sig,
                                              const ExistsFormula& k,
                                              const UniversalTheory& t,
                                              const std::vector<int>& bound) {
  for (SortId s = 0; s < sig->num_sorts(); ++s) {
    bool needed = !sig->constants_of(s).empty();
    for (const auto& c : k.cubes) {
      for (const auto& v : c.vars) needed = needed || v.sort == s;
    }
    if (needed && bound.at(s) < 1) {
      throw BoundTooSmall("bound for sort " + sig->sort(s).name + " must be at least 1");
    }
  }
  std::vector<Configuration> out;
  if (k.is_false()) return out;
  std::set<std::string> seen;
  EnumerationFilter filter;
  filter.required.push_back(k);
  for_each_model(sig, t.axioms, bound, filter, [&](const Configuration& c) {
    if (eval_formula(c, k) && seen.insert(isomorphism_key(c)).second) out.push_back(c);
    return true;
  });
  return out;
}

}  // namespace arbac
