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

#ifndef ARBAC_BSR_SAT_HPP_
#define ARBAC_BSR_SAT_HPP_

#include <cstdint>
#include <vector>

namespace arbac::sat {

// Literal 2v for variable v, 2v+1 for its negation.
struct Lit {
  int x = -1;
  int var() const { return x >> 1; }
  bool neg() const { return x & 1; }
  Lit operator~() const { return Lit{x ^ 1}; }
  bool operator==(const Lit&) const = default;
  auto operator<=>(const Lit&) const = default;
};

inline Lit pos(int v) { return Lit{2 * v}; }
inline Lit neg(int v) { return Lit{2 * v + 1}; }

enum class Status { kSat, kUnsat, kUnknown };

struct Stats {
  long decisions = 0;
  long conflicts = 0;
  long propagations = 0;
  long restarts = 0;
};

// CDCL with two watched literals, first-UIP learning, VSIDS branching,
// phase saving and Luby restarts. Clauses may be added between solve calls.
class Solver {
 public:
  int new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }
  // Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::vector<Lit> lits);
  // max_conflicts < 0 means unlimited.
  Status solve(long max_conflicts = -1);
  bool model_value(int v) const { return model_[v] > 0; }
  const Stats& stats() const { return stats_; }

 private:
  struct Clause {
    std::vector<Lit> lits;
  };
  struct Watcher {
    int cref;
    Lit blocker;
  };

  int value(Lit l) const {
    int a = assigns_[l.var()];
    return l.neg() ? -a : a;
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }
  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int confl, std::vector<Lit>& out, int& bt_level);
  bool redundant(Lit l) const;
  void cancel_until(int lvl);
  int pick_branch_var();
  void bump(int v);
  int attach(std::vector<Lit> lits);

  void heap_insert(int v);
  void heap_up(int i);
  void heap_down(int i);
  int heap_pop();
  bool heap_less(int a, int b) const { return activity_[a] > activity_[b]; }

  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<std::int8_t> phase_;
  std::vector<std::int8_t> model_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<char> seen_;
  bool ok_ = true;
  Stats stats_;
};

// Plain recursive DPLL with unit propagation; slow, used to cross-check.
Status dpll(int num_vars, const std::vector<std::vector<Lit>>& clauses,
            std::vector<std::int8_t>* model);

}  // namespace arbac::sat

#endif  // ARBAC_BSR_SAT_HPP_
