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

#include "arbac/fol/diagram.hpp"

#include <functional>

namespace arbac {

ExistsFormula diagram_formula(const Configuration& m) {
  const Signature& sig = m.sig();
  Cube c;
  for (SortId s = 0; s < sig.num_sorts(); ++s) {
    for (int e = 0; e < m.domain_size(s); ++e) c.vars.push_back(Term::var(s, e));
  }
  for (PredId p = 0; p < sig.num_predicates(); ++p) {
    const auto& sorts = sig.predicate(p).args;
    for (std::size_t i = 0; i < m.extension_size(p); ++i) {
      auto t = m.tuple(p, i);
      std::vector<Term> args;
      for (std::size_t k = 0; k < t.size(); ++k) args.push_back(Term::var(sorts[k], t[k]));
      c.lits.push_back(Literal::make(m.extension(p)[i] != 0, p, std::move(args)));
    }
  }
  for (SortId s = 0; s < sig.num_sorts(); ++s) {
    for (int a = 0; a < m.domain_size(s); ++a) {
      for (int b = a + 1; b < m.domain_size(s); ++b) {
        c.lits.push_back(Literal::eq(Term::var(s, a), Term::var(s, b), false));
      }
    }
  }
  for (ConstId k = 0; k < sig.num_constants(); ++k) {
    SortId s = sig.constant(k).sort;
    c.lits.push_back(Literal::eq(Term::var(s, m.constant(k)), Term::constant(s, k)));
  }
  return ExistsFormula::of(std::move(c));
}

bool embeds(const Configuration& m, const Configuration& n) {
  const Signature& sig = m.sig();
  int ns = sig.num_sorts();
  for (SortId s = 0; s < ns; ++s) {
    if (m.domain_size(s) > n.domain_size(s)) return false;
  }
  // h[s][e] is the image of element e, -1 while unassigned.
  std::vector<std::vector<int>> h(ns), used(ns);
  for (SortId s = 0; s < ns; ++s) {
    h[s].assign(m.domain_size(s), -1);
    used[s].assign(n.domain_size(s), 0);
  }
  for (ConstId k = 0; k < sig.num_constants(); ++k) {
    SortId s = sig.constant(k).sort;
    int a = m.constant(k), b = n.constant(k);
    if (h[s][a] == -1) {
      if (used[s][b]) return false;
      h[s][a] = b;
      used[s][b] = 1;
    } else if (h[s][a] != b) {
      return false;
    }
  }
  auto check = [&]() {
    for (PredId p = 0; p < sig.num_predicates(); ++p) {
      const auto& sorts = sig.predicate(p).args;
      std::vector<int> img(sorts.size());
      for (std::size_t i = 0; i < m.extension_size(p); ++i) {
        auto t = m.tuple(p, i);
        for (std::size_t k = 0; k < t.size(); ++k) img[k] = h[sorts[k]][t[k]];
        if ((m.extension(p)[i] != 0) != n.holds(p, img)) return false;
      }
    }
    return true;
  };
  std::function<bool(SortId, int)> go = [&](SortId s, int e) -> bool {
    if (s == ns) return check();
    if (e == m.domain_size(s)) return go(s + 1, 0);
    if (h[s][e] != -1) return go(s, e + 1);
    for (int b = 0; b < n.domain_size(s); ++b) {
      if (used[s][b]) continue;
      h[s][e] = b;
      used[s][b] = 1;
      if (go(s, e + 1)) return true;
      used[s][b] = 0;
    }
    h[s][e] = -1;
    return false;
  };
  return go(0, 0);
}

}  // namespace arbac
