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

#include "arbac/fol/canonical.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace arbac {

namespace {

constexpr long kPermutationBudget = 5040;

std::vector<Literal> normalized_sorted(std::vector<Literal> lits) {
  for (auto& l : lits) l = normalize_eq(l);
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

std::vector<Literal> rename(const std::vector<Literal>& lits,
                            const std::map<Term, Term>& pi) {
  std::vector<Literal> out = lits;
  for (auto& l : out) {
    for (auto& t : l.atom.args) {
      if (t.is_var()) t = pi.at(t);
    }
  }
  return normalized_sorted(std::move(out));
}

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

// Color refinement over the variable/literal incidence structure. Colors are
// invariant under variable renaming; hash collisions only merge classes.
std::map<Term, int> refine_colors(const std::vector<Term>& vars,
                                  const std::vector<Literal>& lits) {
  const std::size_t n = vars.size();
  auto index = [&](const Term& t) {
    return static_cast<int>(std::lower_bound(vars.begin(), vars.end(), t) - vars.begin());
  };
  // Per literal: argument variable indices, -1 for constants.
  std::vector<std::vector<int>> arg_var(lits.size());
  for (std::size_t i = 0; i < lits.size(); ++i)
    for (const auto& t : lits[i].atom.args) arg_var[i].push_back(t.is_var() ? index(t) : -1);
  std::vector<std::uint64_t> color(n);
  for (std::size_t v = 0; v < n; ++v) color[v] = static_cast<std::uint64_t>(vars[v].sort);
  std::size_t classes = 0;
  std::vector<std::vector<std::uint64_t>> occ(n);
  std::vector<std::uint64_t> sig(n);
  std::vector<std::uint64_t> codes;
  for (int round = 0; round < 64; ++round) {
    for (auto& o : occ) o.clear();
    for (std::size_t i = 0; i < lits.size(); ++i) {
      const Literal& l = lits[i];
      std::size_t k = l.atom.args.size();
      for (std::size_t self = 0; self < k; ++self) {
        int v = arg_var[i][self];
        if (v < 0) continue;
        codes.assign(k, 0);
        for (std::size_t j = 0; j < k; ++j) {
          const Term& t = l.atom.args[j];
          std::uint64_t c;
          if (t.is_const()) {
            c = mix(mix(0, static_cast<std::uint64_t>(t.sort)), static_cast<std::uint64_t>(t.id));
          } else if (arg_var[i][j] == v) {
            c = mix(1, static_cast<std::uint64_t>(t.sort));
          } else {
            c = mix(mix(2, static_cast<std::uint64_t>(t.sort)), color[arg_var[i][j]]);
          }
          codes[j] = c;
        }
        if (l.is_eq()) std::sort(codes.begin(), codes.end());
        std::uint64_t h = mix(static_cast<std::uint64_t>(l.atom.pred + 2), l.positive);
        for (std::size_t j = 0; j < k; ++j) h = mix(h, codes[j]);
        // A variable repeated within one literal contributes once.
        auto& o = occ[v];
        if (o.empty() || o.back() != h) o.push_back(h);
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(occ[v].begin(), occ[v].end());
      std::uint64_t h = mix(0x51, color[v]);
      for (auto x : occ[v]) h = mix(h, x);
      sig[v] = h;
    }
    std::vector<std::uint64_t> ranks = sig;
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    for (std::size_t v = 0; v < n; ++v)
      color[v] = static_cast<std::uint64_t>(std::lower_bound(ranks.begin(), ranks.end(), sig[v]) -
                                            ranks.begin());
    if (ranks.size() == classes) break;
    classes = ranks.size();
  }
  std::map<Term, int> out;
  for (std::size_t v = 0; v < n; ++v) out[vars[v]] = static_cast<int>(color[v]);
  return out;
}

}  // namespace

Literal normalize_eq(const Literal& l) {
  if (!l.is_eq() || !(l.atom.args[1] < l.atom.args[0])) return l;
  Literal out = l;
  std::swap(out.atom.args[0], out.atom.args[1]);
  return out;
}

Cube canonicalize(const Cube& c) {
  std::vector<Literal> lits = normalized_sorted(c.lits);
  std::vector<Term> vars = vars_of(lits);
  if (vars.empty()) return Cube{{}, std::move(lits)};

  auto color = refine_colors(vars, lits);
  // Groups of interchangeable variables, ordered by (sort, color).
  std::map<std::pair<int, int>, std::vector<Term>> groups;
  for (const auto& v : vars) groups[{v.sort, color[v]}].push_back(v);
  std::vector<std::vector<Term>> order;
  long budget = 1;
  std::vector<bool> permute;
  for (auto& [key, g] : groups) {
    long f = 1;
    for (std::size_t i = 2; i <= g.size(); ++i) f *= static_cast<long>(i);
    bool ok = budget * f <= kPermutationBudget;
    if (ok) budget *= f;
    permute.push_back(ok && g.size() > 1);
    order.push_back(g);
  }

  std::vector<Literal> best;
  bool have = false;
  std::vector<std::vector<Term>> cur = order;
  // Odometer over the permutations of each permutable group.
  while (true) {
    std::map<Term, Term> pi;
    std::map<SortId, int> next;
    for (const auto& g : cur) {
      for (const auto& v : g) pi[v] = Term::var(v.sort, next[v.sort]++);
    }
    auto enc = rename(lits, pi);
    if (!have || enc < best) {
      best = std::move(enc);
      have = true;
    }
    std::size_t i = 0;
    for (; i < cur.size(); ++i) {
      if (!permute[i]) continue;
      if (std::next_permutation(cur[i].begin(), cur[i].end())) break;
    }
    if (i == cur.size()) break;
  }

  // First-occurrence renumbering per sort.
  std::map<Term, Term> pi;
  std::map<SortId, int> next;
  for (const auto& l : best) {
    for (const auto& t : l.atom.args) {
      if (t.is_var() && !pi.count(t)) pi[t] = Term::var(t.sort, next[t.sort]++);
    }
  }
  Cube out;
  out.lits = rename(best, pi);
  out.vars = vars_of(out.lits);
  return out;
}

ExistsFormula canonicalize(const ExistsFormula& f) {
  ExistsFormula out;
  std::set<Cube> seen;
  for (const auto& c : f.cubes) {
    Cube k = canonicalize(c);
    if (seen.insert(k).second) out.cubes.push_back(std::move(k));
  }
  return out;
}

namespace {

// A general literal can only map onto a specific one with the same
// polarity, predicate, sorts and constants in place.
bool compatible(const Literal& g, const Literal& s, bool swap) {
  std::size_t n = g.atom.args.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Term& a = g.atom.args[i];
    const Term& b = s.atom.args[swap ? n - 1 - i : i];
    if (a.sort != b.sort || (a.is_const() && a != b)) return false;
  }
  return true;
}

struct Matcher {
  std::vector<const Literal*> gen;
  std::vector<std::size_t> begin;     // gen literal k owns cands[begin[k], begin[k+1])
  std::vector<const Literal*> cands;
  std::vector<std::pair<Term, Term>> sigma;  // undone by truncation

  bool bind(const Term& g, const Term& s) {
    if (g.is_const()) return g == s;
    for (const auto& [v, t] : sigma)
      if (v == g) return t == s;
    sigma.emplace_back(g, s);
    return true;
  }

  bool try_args(const Literal& g, const Literal& s, bool swap) {
    std::size_t n = g.atom.args.size();
    for (std::size_t i = 0; i < n; ++i)
      if (!bind(g.atom.args[i], s.atom.args[swap ? n - 1 - i : i])) return false;
    return true;
  }

  bool search(std::size_t k) {
    if (k == gen.size()) return true;
    const Literal& g = *gen[k];
    for (std::size_t c = begin[k]; c < begin[k + 1]; ++c) {
      for (int swap = 0; swap < (g.is_eq() ? 2 : 1); ++swap) {
        std::size_t mark = sigma.size();
        if (try_args(g, *cands[c], swap == 1) && search(k + 1)) return true;
        sigma.resize(mark);
      }
    }
    return false;
  }
};

}  // namespace

bool subsumes(const Cube& general, const Cube& specific) {
  // Most constrained literals first: fewer candidates, more constants.
  struct Entry {
    std::size_t cands;
    int consts;
    std::size_t index;
  };
  const std::size_t n = general.lits.size();
  std::vector<Entry> order;
  order.reserve(n);
  std::vector<std::vector<const Literal*>> cands(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Literal& l = general.lits[i];
    int consts = 0;
    for (const auto& t : l.atom.args) consts += t.is_const();
    for (const auto& s : specific.lits) {
      if (s.positive != l.positive || s.atom.pred != l.atom.pred) continue;
      if (compatible(l, s, false) || (l.is_eq() && compatible(l, s, true)))
        cands[i].push_back(&s);
    }
    if (cands[i].empty()) return false;
    order.push_back({cands[i].size(), -consts, i});
  }
  std::stable_sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.cands, a.consts) < std::tie(b.cands, b.consts);
  });
  Matcher m;
  m.gen.reserve(n);
  m.begin.reserve(n + 1);
  for (const auto& e : order) {
    m.gen.push_back(&general.lits[e.index]);
    m.begin.push_back(m.cands.size());
    m.cands.insert(m.cands.end(), cands[e.index].begin(), cands[e.index].end());
  }
  m.begin.push_back(m.cands.size());
  return m.search(0);
}

std::uint64_t feature_mask(const Cube& c) {
  std::uint64_t m = 0;
  auto bit = [&](std::uint64_t h) { m |= std::uint64_t{1} << (h * 0x9e3779b97f4a7c15ULL >> 58); };
  for (const auto& l : c.lits) {
    std::uint64_t base = static_cast<std::uint64_t>(l.atom.pred + 2) * 2 + l.positive;
    bit(base);
    for (std::size_t i = 0; i < l.atom.args.size(); ++i) {
      const Term& t = l.atom.args[i];
      if (!t.is_const()) continue;
      // Equality may match either orientation, so its position is dropped.
      std::uint64_t pos = l.is_eq() ? 0 : i + 1;
      bit(base * 1315423911ULL + pos * 2654435761ULL + static_cast<std::uint64_t>(t.id) + 7);
    }
  }
  return m;
}

}  // namespace arbac
