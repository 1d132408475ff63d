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

#include "arbac/bsr/solver.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "arbac/bsr/sat.hpp"
#include "arbac/errors.hpp"
#include "arbac/fol/print.hpp"
#include "arbac/oracle/eval.hpp"

namespace arbac {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kSat:
      return "sat";
    case Verdict::kUnsat:
      return "unsat";
    case Verdict::kTimeout:
      return "timeout";
  }
  return "?";
}

namespace {

using sat::Lit;

struct BudgetExceeded {};

// Ground truth value of a subformula: constant or a literal.
struct Enc {
  enum Kind : std::uint8_t { kFalse, kTrue, kLit } kind;
  Lit lit;
  static Enc f() { return {kFalse, {}}; }
  static Enc t() { return {kTrue, {}}; }
  static Enc of(Lit l) { return {kLit, l}; }
};

// Compiled matrix: variables replaced by slot numbers.
struct CTerm {
  bool slot;
  int idx;
};

struct CNode {
  Formula::Kind kind;
  bool positive = true;
  PredId pred = kEq;
  std::vector<CTerm> args;
  std::vector<CNode> kids;
};

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x + 0x9e3779b9)) * 1099511628211ull;
    return h;
  }
};

class Grounder {
 public:
  Grounder(const BSRProblem& p, const SolverOptions& opts) : p_(p), opts_(opts) {}

  SatResult run() {
    SatResult res;
    try {
      build_universe();
      encode_exists();
      encode_forall();
      res.verdict = solve_loop();
    } catch (const BudgetExceeded&) {
      res.verdict = Verdict::kTimeout;
    }
    res.stats.ground_clauses = clauses_;
    res.stats.sat_vars = solver_.num_vars();
    res.stats.decisions = solver_.stats().decisions;
    res.stats.conflicts = solver_.stats().conflicts;
    res.stats.refinements = refinements_;
    res.stats.lazy_instances = lazy_instances_;
    res.stats.universe = static_cast<int>(elems_.size());
    if (res.verdict == Verdict::kSat) res.model = readback();
    return res;
  }

 private:
  struct LazyClause {
    CNode node;
    std::vector<CNode> lits;
    std::vector<SortId> sorts;  // per variable slot
    std::unordered_set<std::vector<int>, VecHash> added;
  };
  struct Elem {
    SortId sort;
    ConstId cid;
  };

  void build_universe() {
    const Signature& sig = *p_.signature;
    by_sort_.assign(sig.num_sorts(), {});
    const_elem_.assign(sig.num_constants(), -1);
    for (ConstId c = 0; c < sig.num_constants(); ++c) {
      const_elem_[c] = add_elem(sig.constant(c).sort, c);
    }
    skolem_.resize(p_.exists_part.size());
    for (std::size_t i = 0; i < p_.exists_part.size(); ++i) {
      for (const auto& cube : p_.exists_part[i].cubes) {
        std::vector<std::pair<Term, int>> m;
        for (const auto& v : cube.vars) m.emplace_back(v, add_elem(v.sort, -1));
        skolem_[i].push_back(std::move(m));
      }
    }
    for (SortId s = 0; s < sig.num_sorts(); ++s) {
      if (by_sort_[s].empty()) add_elem(s, -1);
    }
    // Under a domain-closure axiom every element equals a constant, so the
    // other universal formulas need instances over constants only.
    inst_dom_ = by_sort_;
    for (const auto& f : p_.forall_part) {
      if (!is_domain_closure(f)) continue;
      SortId s = f.vars[0].sort;
      std::vector<int> consts;
      for (int e : by_sort_[s])
        if (elems_[e].cid >= 0) consts.push_back(e);
      inst_dom_[s] = std::move(consts);
    }
  }

  static bool is_domain_closure(const ForallFormula& f) {
    if (f.vars.size() != 1) return false;
    auto is_case = [&](const Formula& k) {
      if (k.kind != Formula::Kind::kLit || !k.lit.positive || !k.lit.is_eq()) return false;
      const auto& a = k.lit.atom.args;
      return (a[0] == f.vars[0] && a[1].is_const()) || (a[1] == f.vars[0] && a[0].is_const());
    };
    if (f.matrix.kind == Formula::Kind::kLit) return is_case(f.matrix);
    if (f.matrix.kind != Formula::Kind::kOr) return false;
    return std::all_of(f.matrix.kids.begin(), f.matrix.kids.end(), is_case);
  }

  int add_elem(SortId s, ConstId c) {
    int idx = static_cast<int>(elems_.size());
    elems_.push_back({s, c});
    by_sort_[s].push_back(idx);
    return idx;
  }

  void add_clause(std::vector<Lit> c) {
    if (++clauses_ > opts_.budget.max_clauses) throw BudgetExceeded{};
    if (opts_.engine == SatEngine::kDpll) cnf_.push_back(c);
    solver_.add_clause(std::move(c));
  }

  int new_var() { return solver_.new_var(); }

  Lit eq_lit(int a, int b) {
    if (a > b) std::swap(a, b);
    std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    auto it = eq_.find(key);
    if (it != eq_.end()) return sat::pos(it->second);
    int v = new_var();
    eq_.emplace(key, v);
    eq_pairs_.push_back({a, b, v});
    return sat::pos(v);
  }

  Lit atom_lit(PredId p, const int* args, int n) {
    key_.assign(1, p);
    key_.insert(key_.end(), args, args + n);
    auto it = atoms_.find(key_);
    if (it != atoms_.end()) return sat::pos(it->second);
    int v = new_var();
    atoms_.emplace(key_, v);
    atom_list_.push_back({p, std::vector<int>(args, args + n), v});
    return sat::pos(v);
  }

  Enc literal(bool positive, PredId pred, const int* args, int n) {
    if (pred == kEq) {
      if (args[0] == args[1]) return positive ? Enc::t() : Enc::f();
      Lit l = eq_lit(args[0], args[1]);
      return Enc::of(positive ? l : ~l);
    }
    Lit l = atom_lit(pred, args, n);
    return Enc::of(positive ? l : ~l);
  }

  int term_elem(const Term& t, const std::vector<std::pair<Term, int>>& m) const {
    if (t.is_const()) return const_elem_.at(t.id);
    for (const auto& [v, e] : m) {
      if (v == t) return e;
    }
    throw InternalError("unbound variable in existential cube");
  }

  Enc ground_cube(std::size_t i, std::size_t j) {
    const Cube& cube = p_.exists_part[i].cubes[j];
    const auto& m = skolem_[i][j];
    std::vector<Lit> parts;
    int buf[16];
    for (const auto& l : cube.lits) {
      int n = static_cast<int>(l.atom.args.size());
      for (int k = 0; k < n; ++k) buf[k] = term_elem(l.atom.args[k], m);
      Enc e = literal(l.positive, l.atom.pred, buf, n);
      if (e.kind == Enc::kFalse) return Enc::f();
      if (e.kind == Enc::kLit) parts.push_back(e.lit);
    }
    return conj(parts);
  }

  Enc conj(const std::vector<Lit>& parts) {
    if (parts.empty()) return Enc::t();
    if (parts.size() == 1) return Enc::of(parts[0]);
    Lit a = sat::pos(new_var());
    for (Lit q : parts) add_clause({~a, q});
    return Enc::of(a);
  }

  void encode_exists() {
    for (std::size_t i = 0; i < p_.exists_part.size(); ++i) {
      const auto& f = p_.exists_part[i];
      if (f.cubes.size() == 1) {
        const auto& m = skolem_[i][0];
        int buf[16];
        for (const auto& l : f.cubes[0].lits) {
          int n = static_cast<int>(l.atom.args.size());
          for (int k = 0; k < n; ++k) buf[k] = term_elem(l.atom.args[k], m);
          assert_enc(literal(l.positive, l.atom.pred, buf, n));
        }
        continue;
      }
      std::vector<Lit> clause;
      bool done = false;
      for (std::size_t j = 0; j < f.cubes.size() && !done; ++j) {
        Enc e = ground_cube(i, j);
        if (e.kind == Enc::kTrue) done = true;
        if (e.kind == Enc::kLit) clause.push_back(e.lit);
      }
      if (!done) add_clause(std::move(clause));
    }
  }

  void assert_enc(Enc e) {
    if (e.kind == Enc::kTrue) return;
    if (e.kind == Enc::kFalse) {
      add_clause({});
      return;
    }
    add_clause({e.lit});
  }

  CNode compile(const Formula& f, const std::vector<Term>& vars) {
    CNode n;
    n.kind = f.kind;
    if (f.kind == Formula::Kind::kLit) {
      n.positive = f.lit.positive;
      n.pred = f.lit.atom.pred;
      for (const auto& t : f.lit.atom.args) {
        if (t.is_const()) {
          n.args.push_back({false, const_elem_.at(t.id)});
          continue;
        }
        auto it = std::find(vars.begin(), vars.end(), t);
        if (it == vars.end()) throw InternalError("free variable in universal formula");
        n.args.push_back({true, static_cast<int>(it - vars.begin())});
      }
    }
    for (const auto& k : f.kids) n.kids.push_back(compile(k, vars));
    return n;
  }

  Enc encode(const CNode& n, const std::vector<int>& slot) {
    switch (n.kind) {
      case Formula::Kind::kTrue:
        return Enc::t();
      case Formula::Kind::kFalse:
        return Enc::f();
      case Formula::Kind::kLit: {
        int buf[16];
        int k = static_cast<int>(n.args.size());
        for (int i = 0; i < k; ++i) buf[i] = n.args[i].slot ? slot[n.args[i].idx] : n.args[i].idx;
        return literal(n.positive, n.pred, buf, k);
      }
      case Formula::Kind::kAnd: {
        std::vector<Lit> parts;
        for (const auto& c : n.kids) {
          Enc e = encode(c, slot);
          if (e.kind == Enc::kFalse) return Enc::f();
          if (e.kind == Enc::kLit) parts.push_back(e.lit);
        }
        return conj(parts);
      }
      case Formula::Kind::kOr: {
        std::vector<Lit> parts;
        for (const auto& c : n.kids) {
          Enc e = encode(c, slot);
          if (e.kind == Enc::kTrue) return Enc::t();
          if (e.kind == Enc::kLit) parts.push_back(e.lit);
        }
        if (parts.empty()) return Enc::f();
        if (parts.size() == 1) return Enc::of(parts[0]);
        Lit a = sat::pos(new_var());
        parts.push_back(~a);
        add_clause(std::move(parts));
        return Enc::of(a);
      }
    }
    return Enc::t();
  }

  void assert_node(const CNode& n, const std::vector<int>& slot) {
    if (n.kind == Formula::Kind::kAnd) {
      for (const auto& c : n.kids) assert_node(c, slot);
      return;
    }
    if (n.kind == Formula::Kind::kOr) {
      std::vector<Lit> clause;
      for (const auto& c : n.kids) {
        Enc e = encode(c, slot);
        if (e.kind == Enc::kTrue) return;
        if (e.kind == Enc::kLit) clause.push_back(e.lit);
      }
      add_clause(std::move(clause));
      return;
    }
    assert_enc(encode(n, slot));
  }

  static bool is_clause(const Formula& f) {
    if (f.kind == Formula::Kind::kLit) return true;
    if (f.kind != Formula::Kind::kOr) return false;
    return std::all_of(f.kids.begin(), f.kids.end(),
                       [](const Formula& k) { return k.kind == Formula::Kind::kLit; });
  }

  void encode_forall() {
    for (const auto& f : p_.forall_part) {
      bool closure = is_domain_closure(f);
      const auto& doms = closure ? by_sort_ : inst_dom_;
      CNode n = compile(f.matrix, f.vars);
      if (opts_.lazy_instantiation && !closure && !f.vars.empty() && is_clause(f.matrix)) {
        LazyClause lc;
        lc.sorts.reserve(f.vars.size());
        for (const auto& v : f.vars) lc.sorts.push_back(v.sort);
        if (n.kind == Formula::Kind::kLit) {
          lc.lits.push_back(n);
        } else {
          lc.lits = n.kids;
        }
        lc.node = std::move(n);
        lazy_.push_back(std::move(lc));
        continue;
      }
      std::vector<int> slot(f.vars.size(), 0);
      std::vector<std::size_t> pos(f.vars.size(), 0);
      double instances = 1;
      for (const auto& v : f.vars) instances *= static_cast<double>(doms[v.sort].size());
      if (instances > static_cast<double>(opts_.budget.max_clauses)) throw BudgetExceeded{};
      for (std::size_t i = 0; i < f.vars.size(); ++i) slot[i] = doms[f.vars[i].sort][0];
      while (true) {
        assert_node(n, slot);
        std::size_t i = 0;
        for (; i < f.vars.size(); ++i) {
          const auto& dom = doms[f.vars[i].sort];
          if (++pos[i] < dom.size()) {
            slot[i] = dom[pos[i]];
            break;
          }
          pos[i] = 0;
          slot[i] = dom[0];
        }
        if (i == f.vars.size()) break;
      }
    }
  }

  bool eq_true(int a, int b) {
    if (a == b) return true;
    if (a > b) std::swap(a, b);
    auto it = eq_.find((static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b));
    return it != eq_.end() && mv(it->second);
  }

  int find(std::vector<int>& uf, int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  }

  std::vector<int> classes() {
    std::vector<int> uf(elems_.size());
    std::iota(uf.begin(), uf.end(), 0);
    for (const auto& e : eq_pairs_) {
      if (mv(e.var)) uf[find(uf, e.a)] = find(uf, e.b);
    }
    std::vector<int> rep(elems_.size());
    for (std::size_t i = 0; i < elems_.size(); ++i) rep[i] = find(uf, static_cast<int>(i));
    return rep;
  }

  // Adds the transitivity and congruence instances the current model
  // violates. Returns false when the model is consistent.
  bool refine() {
    bool added = false;
    for (SortId s = 0; s < static_cast<SortId>(by_sort_.size()); ++s) {
      const auto& dom = by_sort_[s];
      for (std::size_t x = 0; x < dom.size(); ++x) {
        for (std::size_t y = 0; y < dom.size(); ++y) {
          if (x == y || !eq_true(dom[x], dom[y])) continue;
          for (std::size_t z = 0; z < dom.size(); ++z) {
            if (z == x || z == y || !eq_true(dom[y], dom[z]) || eq_true(dom[x], dom[z])) continue;
            pending_.push_back({~eq_lit(dom[x], dom[y]), ~eq_lit(dom[y], dom[z]),
                                eq_lit(dom[x], dom[z])});
          }
        }
      }
    }
    if (pending_.empty()) {
      std::vector<int> rep = classes();
      std::unordered_map<std::vector<int>, std::vector<std::size_t>, VecHash> groups;
      std::vector<int> key;
      for (std::size_t i = 0; i < atom_list_.size(); ++i) {
        const auto& a = atom_list_[i];
        key.assign(1, a.pred);
        for (int e : a.args) key.push_back(rep[e]);
        groups[key].push_back(i);
      }
      for (auto& [k, members] : groups) {
        if (members.size() < 2) continue;
        for (std::size_t i : members) {
          if (!mv(atom_list_[i].var)) continue;
          for (std::size_t j : members) {
            if (mv(atom_list_[j].var)) continue;
            const auto& a = atom_list_[i];
            const auto& b = atom_list_[j];
            std::vector<Lit> c{~sat::pos(a.var), sat::pos(b.var)};
            for (std::size_t q = 0; q < a.args.size(); ++q) {
              if (a.args[q] != b.args[q]) c.push_back(~eq_lit(a.args[q], b.args[q]));
            }
            pending_.push_back(std::move(c));
          }
        }
      }
    }
    for (auto& c : pending_) {
      add_clause(std::move(c));
      added = true;
    }
    pending_.clear();
    return added;
  }

  // Model-guided instantiation of the lazy clauses. Variables range over one
  // element of inst_dom_ per equality class. A clause is violated when every
  // literal is false, so a negated atom is matched against the true atoms.
  bool instantiate() {
    if (lazy_.empty()) return false;
    rep_ = classes();
    true_atoms_.assign(p_.signature->num_predicates(), {});
    true_keys_.clear();
    for (const auto& a : atom_list_) {
      if (!mv(a.var)) continue;
      std::vector<int> k(1, a.pred);
      for (int e : a.args) k.push_back(rep_[e]);
      if (true_keys_.insert(k).second) true_atoms_[a.pred].push_back(k);
    }
    pick_.assign(elems_.size(), -1);
    class_dom_.assign(by_sort_.size(), {});
    for (SortId s = 0; s < static_cast<SortId>(inst_dom_.size()); ++s) {
      for (int e : inst_dom_[s]) {
        if (pick_[rep_[e]] != -1) continue;
        pick_[rep_[e]] = e;
        class_dom_[s].push_back(e);
      }
    }
    long added = 0;
    for (auto& lc : lazy_) {
      found_.clear();
      std::vector<int> slot(lc.sorts.size(), -1);
      violations(lc, slot);
      for (auto& inst : found_) {
        if (!lc.added.insert(inst).second) continue;
        assert_node(lc.node, inst);
        ++added;
      }
    }
    lazy_instances_ += added;
    if (added > 0) return true;
    // A violation whose instance is already present means the atoms it needs
    // were congruence-merged but not yet refined; ground everything left.
    bool stale = false;
    for (auto& lc : lazy_) {
      found_.clear();
      std::vector<int> slot(lc.sorts.size(), -1);
      violations(lc, slot);
      stale = stale || !found_.empty();
    }
    if (stale) throw InternalError("lazy instantiation made no progress");
    return false;
  }

  static constexpr std::size_t kViolationsPerRound = 64;

  int elem_of(const CTerm& t, const std::vector<int>& slot) const {
    return t.slot ? slot[t.idx] : t.idx;
  }

  // 1 true, 0 false, -1 some argument unbound.
  int value(const CNode& l, const std::vector<int>& slot) const {
    int buf[16];
    int n = static_cast<int>(l.args.size());
    for (int i = 0; i < n; ++i) {
      int e = elem_of(l.args[i], slot);
      if (e < 0) return -1;
      buf[i] = rep_[e];
    }
    bool atom;
    if (l.pred == kEq) {
      atom = buf[0] == buf[1];
    } else {
      std::vector<int> k(1, l.pred);
      k.insert(k.end(), buf, buf + n);
      atom = true_keys_.count(k) > 0;
    }
    return atom == l.positive ? 1 : 0;
  }

  void violations(const LazyClause& lc, std::vector<int>& slot) {
    if (found_.size() >= kViolationsPerRound) return;
    for (const auto& l : lc.lits)
      if (value(l, slot) == 1) return;
    // A negated atom with unbound arguments: enumerate the true atoms.
    for (const auto& l : lc.lits) {
      if (l.pred == kEq || l.positive || value(l, slot) != -1) continue;
      for (const auto& k : true_atoms_[l.pred]) {
        std::vector<int> saved = slot;
        bool ok = true;
        for (std::size_t i = 0; i < l.args.size() && ok; ++i) {
          int e = elem_of(l.args[i], slot);
          if (e >= 0) {
            ok = rep_[e] == k[i + 1];
          } else {
            int c = pick_[k[i + 1]];
            if (c < 0) ok = false;
            else slot[l.args[i].idx] = c;
          }
        }
        if (ok) violations(lc, slot);
        slot = std::move(saved);
        if (found_.size() >= kViolationsPerRound) return;
      }
      return;
    }
    for (std::size_t v = 0; v < slot.size(); ++v) {
      if (slot[v] >= 0) continue;
      for (int e : class_dom_[lc.sorts[v]]) {
        slot[v] = e;
        violations(lc, slot);
        if (found_.size() >= kViolationsPerRound) break;
      }
      slot[v] = -1;
      return;
    }
    found_.push_back(slot);
  }

  Verdict solve_loop() {
    long budget = opts_.budget.max_conflicts;
    while (true) {
      sat::Status st;
      if (opts_.engine == SatEngine::kDpll) {
        std::vector<std::int8_t> model;
        st = sat::dpll(solver_.num_vars(), cnf_, &model);
        dpll_model_ = model;
      } else {
        long before = solver_.stats().conflicts;
        st = solver_.solve(budget);
        budget -= solver_.stats().conflicts - before;
      }
      if (st == sat::Status::kUnknown) return Verdict::kTimeout;
      if (st == sat::Status::kUnsat) return Verdict::kUnsat;
      if (refine()) {
        ++refinements_;
      } else if (!instantiate()) {
        return Verdict::kSat;
      }
      if (budget <= 0 && opts_.engine == SatEngine::kCdcl) return Verdict::kTimeout;
    }
  }

  bool mv(int v) const {
    if (opts_.engine == SatEngine::kDpll) return dpll_model_[v] > 0;
    return solver_.model_value(v);
  }

  Configuration readback() {
    const Signature& sig = *p_.signature;
    std::vector<int> rep = classes();
    std::vector<int> label(elems_.size(), -1);
    std::vector<int> sizes(sig.num_sorts(), 0);
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      int r = rep[i];
      if (label[r] == -1) label[r] = sizes[elems_[r].sort]++;
      label[i] = label[r];
    }
    Configuration m(p_.signature, sizes);
    for (ConstId c = 0; c < sig.num_constants(); ++c) m.set_constant(c, label[const_elem_[c]]);
    std::vector<int> t;
    for (const auto& a : atom_list_) {
      if (!mv(a.var)) continue;
      t.clear();
      for (int e : a.args) t.push_back(label[e]);
      m.set(a.pred, t, true);
    }
    return m;
  }

  struct AtomRec {
    PredId pred;
    std::vector<int> args;
    int var;
  };
  struct EqRec {
    int a, b, var;
  };

  const BSRProblem& p_;
  const SolverOptions& opts_;
  sat::Solver solver_;
  std::vector<std::vector<Lit>> cnf_;
  std::vector<std::int8_t> dpll_model_;
  std::vector<Elem> elems_;
  std::vector<std::vector<int>> by_sort_;
  std::vector<std::vector<int>> inst_dom_;  // instantiation domain per sort
  std::vector<int> const_elem_;
  std::vector<std::vector<std::vector<std::pair<Term, int>>>> skolem_;
  std::unordered_map<std::uint64_t, int> eq_;
  std::vector<EqRec> eq_pairs_;
  std::unordered_map<std::vector<int>, int, VecHash> atoms_;
  std::vector<AtomRec> atom_list_;
  std::vector<int> key_;
  std::vector<std::vector<Lit>> pending_;
  long clauses_ = 0;
  long refinements_ = 0;
  long lazy_instances_ = 0;
  std::vector<LazyClause> lazy_;
  std::vector<int> rep_;
  std::vector<int> pick_;
  std::vector<std::vector<int>> class_dom_;
  std::vector<std::vector<std::vector<int>>> true_atoms_;
  std::unordered_set<std::vector<int>, VecHash> true_keys_;
  std::vector<std::vector<int>> found_;
};

}  // namespace

SatResult check_sat(const BSRProblem& p, const SolverOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  for (const auto& f : p.exists_part) {
    for (const auto& c : f.cubes) check_well_sorted(*p.signature, c);
  }
  for (const auto& f : p.forall_part) check_well_sorted(*p.signature, f.matrix);
  Grounder g(p, opts);
  SatResult res = g.run();
  if (opts.verify_model && res.model) {
    for (const auto& f : p.exists_part) {
      if (!eval_formula(*res.model, f)) throw InternalError("model violates an existential part");
    }
    for (const auto& f : p.forall_part) {
      if (!eval_formula(*res.model, f)) throw InternalError("model violates a universal part");
    }
  }
  if (!opts.external_solver.empty() && res.verdict != Verdict::kTimeout) {
    auto ext = run_external_solver(opts.external_solver, export_smtlib(p));
    if (ext && *ext != res.verdict) res.stats.external_disagreements = 1;
  }
  res.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

bool entails(const SignaturePtr& sig, const ExistsFormula& f, const ExistsFormula& g,
             const UniversalTheory& t, const std::vector<ForallFormula>& extra,
             const SolverOptions& opts) {
  BSRProblem p{sig, {f}, {}};
  p.add(t);
  for (const auto& e : extra) p.add(e);
  for (auto& c : negate_exists_clauses(g)) p.add(std::move(c));
  auto r = check_sat(p, opts);
  if (r.verdict == Verdict::kTimeout) throw SolverTimeout("entailment check exceeded its budget");
  return r.verdict == Verdict::kUnsat;
}

namespace {

std::string quote(const std::string& s) { return "|" + s + "|"; }

std::string smt_term(const Signature& sig, const Term& t) {
  if (t.is_var()) return quote("v!" + var_name(sig, t));
  return quote(sig.constant(t.id).name);
}

std::string smt_literal(const Signature& sig, const Literal& l) {
  std::string a;
  if (l.is_eq()) {
    a = "(= " + smt_term(sig, l.atom.args[0]) + " " + smt_term(sig, l.atom.args[1]) + ")";
  } else if (l.atom.args.empty()) {
    a = quote(sig.pred_name(l.atom.pred));
  } else {
    a = "(" + quote(sig.pred_name(l.atom.pred));
    for (const auto& t : l.atom.args) a += " " + smt_term(sig, t);
    a += ")";
  }
  return l.positive ? a : "(not " + a + ")";
}

std::string smt_nary(const char* op, const std::vector<std::string>& xs, const char* unit) {
  if (xs.empty()) return unit;
  if (xs.size() == 1) return xs[0];
  std::string out = std::string("(") + op;
  for (const auto& x : xs) out += " " + x;
  return out + ")";
}

std::string smt_formula(const Signature& sig, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::kTrue:
      return "true";
    case Formula::Kind::kFalse:
      return "false";
    case Formula::Kind::kLit:
      return smt_literal(sig, f.lit);
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      std::vector<std::string> xs;
      for (const auto& k : f.kids) xs.push_back(smt_formula(sig, k));
      return f.kind == Formula::Kind::kAnd ? smt_nary("and", xs, "true")
                                           : smt_nary("or", xs, "false");
    }
  }
  return "true";
}

std::string smt_binders(const Signature& sig, const std::vector<Term>& vars) {
  std::string out = "(";
  for (const auto& v : vars) {
    out += "(" + smt_term(sig, v) + " " + quote(sig.sort(v.sort).name) + ")";
  }
  return out + ")";
}

}  // namespace

std::string export_smtlib(const BSRProblem& p) {
  const Signature& sig = *p.signature;
  std::ostringstream out;
  out << "(set-logic UF)\n";
  for (SortId s = 0; s < sig.num_sorts(); ++s) {
    out << "(declare-sort " << quote(sig.sort(s).name) << " 0)\n";
  }
  for (ConstId c = 0; c < sig.num_constants(); ++c) {
    out << "(declare-fun " << quote(sig.constant(c).name) << " () "
        << quote(sig.sort(sig.constant(c).sort).name) << ")\n";
  }
  for (PredId q = 0; q < sig.num_predicates(); ++q) {
    out << "(declare-fun " << quote(sig.pred_name(q)) << " (";
    const auto& args = sig.predicate(q).args;
    for (std::size_t i = 0; i < args.size(); ++i) {
      out << (i ? " " : "") << quote(sig.sort(args[i]).name);
    }
    out << ") Bool)\n";
  }
  for (const auto& f : p.exists_part) {
    std::vector<std::string> cubes;
    for (const auto& c : f.cubes) {
      std::string body = smt_formula(sig, cube_matrix(c));
      cubes.push_back(c.vars.empty() ? body
                                     : "(exists " + smt_binders(sig, c.vars) + " " + body + ")");
    }
    out << "(assert " << smt_nary("or", cubes, "false") << ")\n";
  }
  for (const auto& f : p.forall_part) {
    std::string body = smt_formula(sig, f.matrix);
    std::vector<Term> used = free_vars(f.matrix);
    if (used.empty()) {
      out << "(assert " << body << ")\n";
    } else {
      out << "(assert (forall " << smt_binders(sig, used) << " " << body << "))\n";
    }
  }
  out << "(check-sat)\n";
  return out.str();
}

std::optional<Verdict> run_external_solver(const std::string& path, const std::string& script) {
  char name[] = "/tmp/arbac-smt-XXXXXX.smt2";
  int fd = mkstemps(name, 5);
  if (fd < 0) return std::nullopt;
  {
    std::ofstream f(name);
    f << script;
  }
  close(fd);
  std::string cmd = "'" + path + "' '" + name + "' 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  if (pipe) {
    char buf[256];
    while (fgets(buf, sizeof buf, pipe)) out += buf;
    pclose(pipe);
  }
  std::remove(name);
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    if (line == "sat") return Verdict::kSat;
    if (line == "unsat") return Verdict::kUnsat;
  }
  return std::nullopt;
}

std::string default_external_solver() {
  if (const char* env = std::getenv("ARBAC_SMT_SOLVER")) return env;
  const char* path = std::getenv("PATH");
  if (!path) return {};
  std::istringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    std::string cand = dir + "/z3";
    if (access(cand.c_str(), X_OK) == 0) return cand;
  }
  return {};
}

}  // namespace arbac
