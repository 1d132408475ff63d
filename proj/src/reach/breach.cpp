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

#include "arbac/reach/breach.hpp"

#include <chrono>
#include <deque>
#include <set>

#include "arbac/errors.hpp"
#include "arbac/fol/canonical.hpp"
#include "arbac/oracle/concrete.hpp"
#include "arbac/oracle/eval.hpp"
#include "arbac/preimage/preimage.hpp"

namespace arbac {

const char* to_string(ReachVerdict v) {
  switch (v) {
    case ReachVerdict::kReachable:
      return "reachable";
    case ReachVerdict::kUnreachable:
      return "unreachable";
    case ReachVerdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

BSRProblem safety_problem(const SymbolicPolicy& policy, const ExistsFormula& p, bool strict) {
  BSRProblem prob;
  prob.signature = policy.signature;
  prob.add(policy.theory);
  prob.add(policy.init);
  if (strict)
    for (const auto& c : policy.constraints) prob.add(c);
  prob.add(p);
  return prob;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

class Search {
 public:
  Search(const SymbolicPolicy& policy, const ReachOptions& opts)
      : policy_(policy), opts_(opts), facts_(opts.simplify ? &policy.facts : nullptr),
        start_(Clock::now()) {}

  ReachResult run(const ExistsFormula& goal) {
    ExistsFormula g = facts_ ? simplify(goal, *facts_) : canonicalize(goal);
    try {
      if (opts_.mode == FixpointMode::kPerTransition) {
        per_transition(g);
      } else {
        monolithic(g);
      }
    } catch (const SolverTimeout& e) {
      inconclusive(std::string("solver budget: ") + e.what());
    }
    if (res_.verdict == ReachVerdict::kReachable && opts_.extract_trace)
      res_.trace = extract_trace(policy_, res_.cubes, static_cast<int>(res_.cubes.size()) - 1,
                                 goal, opts_);
    res_.wall_ms = ms_since(start_);
    return std::move(res_);
  }

 private:
  IterationStats& stats(int depth) {
    while (static_cast<int>(res_.stats.size()) <= depth) {
      res_.stats.emplace_back();
      res_.stats.back().iteration = static_cast<int>(res_.stats.size()) - 1;
    }
    return res_.stats[depth];
  }

  void inconclusive(const std::string& why) {
    res_.verdict = ReachVerdict::kInconclusive;
    res_.reason = why;
    res_.fixpoint = b_formula();
  }

  bool out_of_time() const {
    return opts_.timeout_s > 0 && ms_since(start_) > opts_.timeout_s * 1000;
  }

  ExistsFormula b_formula() const {
    ExistsFormula f;
    for (int i : accepted_) f.cubes.push_back(res_.cubes[i].cube);
    return f;
  }

  Verdict solve(const BSRProblem& p, IterationStats& st) {
    ++st.solver_calls;
    ++res_.solver_calls;
    SatResult r = check_sat(p, opts_.solver);
    if (r.verdict == Verdict::kTimeout) throw SolverTimeout("check_sat budget exhausted");
    return r.verdict;
  }

  // theta and iota and p and not B.
  bool new_states(const ExistsFormula& p, IterationStats& st) {
    BSRProblem prob;
    prob.signature = policy_.signature;
    prob.add(policy_.theory);
    for (const auto& c : policy_.constraints) prob.add(c);
    prob.add(p);
    prob.forall_part.insert(prob.forall_part.end(), not_b_.begin(), not_b_.end());
    return solve(prob, st) == Verdict::kSat;
  }

  bool meets_init(const ExistsFormula& p, IterationStats& st) {
    return solve(safety_problem(policy_, p, opts_.strict_initial), st) == Verdict::kSat;
  }

  void accept(TaggedCube tc) {
    for (auto& f : negate_exists_clauses(ExistsFormula::of(tc.cube))) not_b_.push_back(f);
    accepted_.push_back(static_cast<int>(res_.cubes.size()));
    accepted_mask_.push_back(feature_mask(tc.cube));
    res_.cubes.push_back(std::move(tc));
  }

  bool subsumed_by_b(const Cube& c) const {
    std::uint64_t m = feature_mask(c);
    for (std::size_t k = 0; k < accepted_.size(); ++k)
      if (may_subsume(accepted_mask_[k], m) && subsumes(res_.cubes[accepted_[k]].cube, c))
        return true;
    return false;
  }

  void per_transition(const ExistsFormula& g) {
    std::deque<TaggedCube> queue;
    for (const auto& c : g.cubes) queue.push_back(TaggedCube{c, -1, -1, 0});
    stats(0);
    long seen = 0;
    while (!queue.empty()) {
      TaggedCube tc = std::move(queue.front());
      queue.pop_front();
      if (tc.depth > opts_.max_iterations) return inconclusive("iteration cap");
      if (out_of_time()) return inconclusive("timeout");
      res_.steps = std::max(res_.steps, tc.depth);
      auto t0 = Clock::now();
      IterationStats& st = stats(tc.depth);
      ++st.frontier;
      bool skip = opts_.syntactic_subsumption && subsumed_by_b(tc.cube);
      if (skip) ++st.subsumed;
      if (!skip && !new_states(ExistsFormula::of(tc.cube), st)) {
        skip = true;
        ++st.covered;
      }
      if (skip) {
        st.wall_ms += ms_since(t0);
        continue;
      }
      if (meets_init(ExistsFormula::of(tc.cube), st)) {
        res_.cubes.push_back(std::move(tc));
        res_.verdict = ReachVerdict::kReachable;
        st.wall_ms += ms_since(t0);
        return;
      }
      int parent = static_cast<int>(res_.cubes.size());
      int depth = tc.depth;
      accept(std::move(tc));
      ++st.added;
      for (size_t r = 0; r < policy_.transitions.size(); ++r) {
        ExistsFormula pre = pre_image(policy_.transitions[r], res_.cubes[parent].cube, facts_);
        for (auto& c : pre.cubes) {
          queue.push_back(TaggedCube{std::move(c), parent, static_cast<int>(r), depth + 1});
          if (++seen > opts_.max_cubes) return inconclusive("cube cap");
        }
      }
      st.wall_ms += ms_since(t0);
    }
    res_.verdict = ReachVerdict::kUnreachable;
    res_.fixpoint = b_formula();
  }

  void monolithic(const ExistsFormula& g) {
    std::vector<TaggedCube> p;
    for (const auto& c : g.cubes) p.push_back(TaggedCube{c, -1, -1, 0});
    std::set<Cube> dedupe;
    for (int n = 0;; ++n) {
      if (n > opts_.max_iterations) return inconclusive("iteration cap");
      if (out_of_time()) return inconclusive("timeout");
      res_.steps = n;
      auto t0 = Clock::now();
      IterationStats& st = stats(n);
      st.frontier = static_cast<long>(p.size());
      ExistsFormula pf;
      for (const auto& tc : p) pf.cubes.push_back(tc.cube);
      if (pf.is_false() || !new_states(pf, st)) {
        st.wall_ms += ms_since(t0);
        res_.verdict = ReachVerdict::kUnreachable;
        res_.fixpoint = b_formula();
        return;
      }
      if (meets_init(pf, st)) {
        for (auto& tc : p) {
          if (meets_init(ExistsFormula::of(tc.cube), st)) {
            res_.cubes.push_back(std::move(tc));
            res_.verdict = ReachVerdict::kReachable;
            st.wall_ms += ms_since(t0);
            return;
          }
        }
        throw InternalError("no single cube meets the initial states");
      }
      std::vector<int> parents;
      for (auto& tc : p) {
        parents.push_back(static_cast<int>(res_.cubes.size()));
        accept(std::move(tc));
      }
      st.added = static_cast<long>(parents.size());
      std::vector<TaggedCube> next;
      // Cubes already in B add nothing to P and not B, and their pre-images
      // were taken when they entered.
      for (const auto& tc : res_.cubes) dedupe.insert(tc.cube);
      for (int parent : parents) {
        for (size_t r = 0; r < policy_.transitions.size(); ++r) {
          ExistsFormula pre = pre_image(policy_.transitions[r], res_.cubes[parent].cube, facts_);
          for (auto& c : pre.cubes) {
            if (!dedupe.insert(c).second) continue;
            if (opts_.syntactic_subsumption && subsumed_by_b(c)) {
              ++st.subsumed;
              continue;
            }
            next.push_back(TaggedCube{std::move(c), parent, static_cast<int>(r), n + 1});
          }
        }
      }
      if (static_cast<long>(res_.cubes.size() + next.size()) > opts_.max_cubes)
        return inconclusive("cube cap");
      p = std::move(next);
      st.wall_ms += ms_since(t0);
    }
  }

  const SymbolicPolicy& policy_;
  const ReachOptions& opts_;
  const TheoryFacts* facts_;
  Clock::time_point start_;
  ReachResult res_;
  std::vector<int> accepted_;
  std::vector<std::uint64_t> accepted_mask_;  // feature_mask per accepted cube
  std::vector<ForallFormula> not_b_;
};

bool satisfies_all(const Configuration& c, const std::vector<ForallFormula>& fs) {
  for (const auto& f : fs)
    if (!eval_formula(c, f)) return false;
  return true;
}

}  // namespace

ReachResult breach(const SymbolicPolicy& policy, const ExistsFormula& goal,
                   const ReachOptions& opts) {
  return Search(policy, opts).run(goal);
}

ReachResult breach(const SymbolicPolicy& policy, const ReachOptions& opts) {
  if (!policy.goal) throw InternalError("policy has no goal");
  return breach(policy, *policy.goal, opts);
}

std::vector<TraceStep> extract_trace(const SymbolicPolicy& policy,
                                     const std::vector<TaggedCube>& cubes, int index,
                                     const ExistsFormula& goal, const ReachOptions& opts) {
  SatResult r = check_sat(
      safety_problem(policy, ExistsFormula::of(cubes.at(index).cube), opts.strict_initial),
      opts.solver);
  if (r.verdict != Verdict::kSat || !r.model) throw InternalError("initial cube has no model");
  std::vector<TraceStep> trace{TraceStep{"", *r.model}};
  for (int i = index; cubes[i].parent >= 0; i = cubes[i].parent) {
    const TransitionRule& t = policy.transitions.at(cubes[i].rule);
    const Cube& target = cubes[cubes[i].parent].cube;
    std::optional<Configuration> pick;
    for (auto& n : step_symbolic(t, trace.back().state)) {
      if (!eval_formula(n, target)) continue;
      bool ok = satisfies_all(n, policy.constraints);
      if (!pick || ok) pick = std::move(n);
      if (ok) break;
    }
    if (!pick) throw InternalError("trace step " + t.label + " cannot be instantiated");
    trace.push_back(TraceStep{t.label, std::move(*pick)});
  }
  if (!eval_formula(trace.back().state, goal)) throw InternalError("trace misses the goal");
  return trace;
}

}  // namespace arbac
