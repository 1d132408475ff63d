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

#include "arbac/bsr/sat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace arbac::sat {

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

int Solver::new_var() {
  int v = num_vars();
  assigns_.push_back(0);
  phase_.push_back(-1);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  seen_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v;
}

int Solver::attach(std::vector<Lit> lits) {
  int cref = static_cast<int>(clauses_.size());
  watches_[lits[0].x].push_back({cref, lits[1]});
  watches_[lits[1].x].push_back({cref, lits[0]});
  clauses_.push_back({std::move(lits)});
  return cref;
}

bool Solver::add_clause(std::vector<Lit> lits) {
  if (!ok_) return false;
  cancel_until(0);
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> out;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    Lit l = lits[i];
    if (value(l) > 0) return true;
    if (i + 1 < lits.size() && lits[i + 1] == ~l) return true;
    if (value(l) < 0) continue;
    if (!out.empty() && out.back() == l) continue;
    out.push_back(l);
  }
  if (out.empty()) return ok_ = false;
  if (out.size() == 1) {
    enqueue(out[0], -1);
    if (propagate() != -1) ok_ = false;
    return ok_;
  }
  attach(std::move(out));
  return true;
}

void Solver::enqueue(Lit l, int reason) {
  int v = l.var();
  assigns_[v] = l.neg() ? -1 : 1;
  level_[v] = level();
  reason_[v] = reason;
  trail_.push_back(l);
}

int Solver::propagate() {
  int confl = -1;
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit fl = ~p;
    auto& ws = watches_[fl.x];
    std::size_t i = 0, j = 0;
    ++stats_.propagations;
    while (i < ws.size()) {
      Watcher w = ws[i++];
      if (value(w.blocker) > 0) {
        ws[j++] = w;
        continue;
      }
      auto& c = clauses_[w.cref].lits;
      if (c[0] == fl) std::swap(c[0], c[1]);
      Lit first = c[0];
      if (first != w.blocker && value(first) > 0) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) >= 0) {
          std::swap(c[1], c[k]);
          watches_[c[1].x].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value(first) < 0) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (confl != -1) break;
  }
  return confl;
}

bool Solver::redundant(Lit l) const {
  int r = reason_[l.var()];
  if (r == -1) return false;
  for (const Lit& q : clauses_[r].lits) {
    if (q.var() == l.var()) continue;
    if (!seen_[q.var()] && level_[q.var()] > 0) return false;
  }
  return true;
}

void Solver::analyze(int confl, std::vector<Lit>& out, int& bt_level) {
  out.clear();
  out.push_back(Lit{});
  int path = 0;
  Lit p{};
  int idx = static_cast<int>(trail_.size()) - 1;
  std::vector<int> touched;
  do {
    const auto& c = clauses_[confl].lits;
    for (std::size_t j = (p.x == -1 ? 0 : 1); j < c.size(); ++j) {
      Lit q = c[j];
      int v = q.var();
      if (seen_[v] || level_[v] == 0) continue;
      bump(v);
      seen_[v] = 1;
      touched.push_back(v);
      if (level_[v] >= level()) {
        ++path;
      } else {
        out.push_back(q);
      }
    }
    while (!seen_[trail_[idx].var()]) --idx;
    p = trail_[idx--];
    confl = reason_[p.var()];
    seen_[p.var()] = 0;
    --path;
  } while (path > 0);
  out[0] = ~p;

  std::size_t keep = 1;
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!redundant(out[i])) out[keep++] = out[i];
  }
  out.resize(keep);
  for (int v : touched) seen_[v] = 0;

  bt_level = 0;
  if (out.size() > 1) {
    std::size_t best = 1;
    for (std::size_t i = 2; i < out.size(); ++i) {
      if (level_[out[i].var()] > level_[out[best].var()]) best = i;
    }
    std::swap(out[1], out[best]);
    bt_level = level_[out[1].var()];
  }
  var_inc_ *= 1.0 / 0.95;
}

void Solver::bump(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
}

void Solver::cancel_until(int lvl) {
  if (level() <= lvl) return;
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[lvl]; --i) {
    int v = trail_[i].var();
    phase_[v] = assigns_[v];
    assigns_[v] = 0;
    reason_[v] = -1;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[lvl]);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

int Solver::pick_branch_var() {
  while (!heap_.empty()) {
    int v = heap_pop();
    if (assigns_[v] == 0) return v;
  }
  return -1;
}

Status Solver::solve(long max_conflicts) {
  model_.clear();
  if (!ok_) return Status::kUnsat;
  cancel_until(0);
  if (propagate() != -1) {
    ok_ = false;
    return Status::kUnsat;
  }
  long budget_used = 0;
  int restart_no = 0;
  std::vector<Lit> learnt;
  while (true) {
    long limit = static_cast<long>(luby(2.0, restart_no++) * 100);
    long local = 0;
    while (true) {
      int confl = propagate();
      if (confl != -1) {
        ++stats_.conflicts;
        ++local;
        ++budget_used;
        if (level() == 0) {
          ok_ = false;
          return Status::kUnsat;
        }
        int bt;
        analyze(confl, learnt, bt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          int cref = attach(learnt);
          enqueue(learnt[0], cref);
        }
        if (max_conflicts >= 0 && budget_used >= max_conflicts) {
          cancel_until(0);
          return Status::kUnknown;
        }
        continue;
      }
      if (local >= limit) {
        ++stats_.restarts;
        cancel_until(0);
        break;
      }
      int v = pick_branch_var();
      if (v == -1) {
        model_ = assigns_;
        cancel_until(0);
        return Status::kSat;
      }
      ++stats_.decisions;
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(phase_[v] > 0 ? pos(v) : neg(v), -1);
    }
  }
}

void Solver::heap_insert(int v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_pos_[v]);
}

void Solver::heap_up(int i) {
  int v = heap_[i];
  while (i > 0) {
    int parent = (i - 1) >> 1;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = i;
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

void Solver::heap_down(int i) {
  int v = heap_[i];
  int n = static_cast<int>(heap_.size());
  while (true) {
    int child = 2 * i + 1;
    if (child >= n) break;
    if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = i;
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

int Solver::heap_pop() {
  int v = heap_[0];
  heap_pos_[v] = -1;
  int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return v;
}

Status dpll(int num_vars, const std::vector<std::vector<Lit>>& clauses,
            std::vector<std::int8_t>* model) {
  std::vector<std::int8_t> a(num_vars, 0);
  auto val = [&](Lit l) { return l.neg() ? -a[l.var()] : a[l.var()]; };
  std::function<bool()> go = [&]() -> bool {
    std::vector<int> assigned;
    auto undo = [&]() {
      for (int v : assigned) a[v] = 0;
    };
    // Unit propagation to a fixpoint.
    while (true) {
      bool changed = false;
      for (const auto& c : clauses) {
        int open = 0;
        Lit last{};
        bool sat = false;
        for (Lit l : c) {
          int v = val(l);
          if (v > 0) {
            sat = true;
            break;
          }
          if (v == 0) {
            ++open;
            last = l;
          }
        }
        if (sat) continue;
        if (open == 0) {
          undo();
          return false;
        }
        if (open == 1) {
          a[last.var()] = last.neg() ? -1 : 1;
          assigned.push_back(last.var());
          changed = true;
        }
      }
      if (!changed) break;
    }
    int pick = -1;
    for (const auto& c : clauses) {
      for (Lit l : c) {
        if (val(l) == 0) {
          pick = l.var();
          break;
        }
      }
      if (pick != -1) break;
    }
    if (pick == -1) return true;
    for (int s : {-1, 1}) {
      a[pick] = static_cast<std::int8_t>(s);
      if (go()) return true;
    }
    a[pick] = 0;
    undo();
    return false;
  };
  if (!go()) return Status::kUnsat;
  if (model) {
    *model = a;
    for (auto& v : *model) {
      if (v == 0) v = -1;
    }
  }
  return Status::kSat;
}

}  // namespace arbac::sat
