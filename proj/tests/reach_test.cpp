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

#include <gtest/gtest.h>

#include <chrono>
#include <set>

#include "arbac/bsr/solver.hpp"
#include "arbac/fol/print.hpp"
#include "arbac/oracle/concrete.hpp"
#include "arbac/oracle/eval.hpp"
#include "arbac/policy/dsl.hpp"
#include "arbac/policy/generate.hpp"
#include "arbac/preimage/preimage.hpp"
#include "arbac/reach/bounded.hpp"
#include "arbac/reach/breach.hpp"
#include "test_util.hpp"

namespace arbac {
namespace {

PolicyDecls shipped(const std::string& name) {
  return load_policy_file(testing::policy_path(name));
}

std::vector<RunStep> to_run(const ConcreteInstance& inst, const std::vector<TraceStep>& trace) {
  std::vector<RunStep> run;
  for (const auto& s : trace) run.push_back(RunStep{s.label, from_configuration(inst, s.state)});
  return run;
}

ExistsFormula cubes_up_to(const ReachResult& r, int depth) {
  ExistsFormula f;
  for (const auto& c : r.cubes)
    if (c.depth <= depth) f.cubes.push_back(c.cube);
  return f;
}

void expect_closed(const SymbolicPolicy& sp, const ExistsFormula& b) {
  ExistsFormula pre = pre_image_all(sp.transitions, b, &sp.facts).formula;
  EXPECT_TRUE(entails(sp.signature, pre, b, sp.theory, sp.constraints));
}

TEST(Breach, OneUserUnreachable) {
  auto start = std::chrono::steady_clock::now();
  auto d = shipped("one_user.arbac");
  auto sp = compile_policy(d);
  auto r = breach(sp);
  ASSERT_EQ(r.verdict, ReachVerdict::kUnreachable);
  ASSERT_TRUE(r.fixpoint.has_value());
  auto b1 = parse_exists(*sp.signature,
                         "(exists ((u User) (r Role)) (and (ua u r) (= u eu) (= r er5)))");
  bool found = false;
  for (const auto& c : r.fixpoint->cubes) {
    auto f = ExistsFormula::of(c);
    found = found || (entails(sp.signature, f, b1, sp.theory) &&
                      entails(sp.signature, b1, f, sp.theory));
  }
  EXPECT_TRUE(found);
  expect_closed(sp, *r.fixpoint);
  auto inst = make_concrete(d);
  auto fr = forward_reach(inst, *inst.goal);
  EXPECT_FALSE(fr.reachable);
  EXPECT_LE(fr.states, 256);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 5.0);
}

TEST(Breach, OneUserFixpointMatchesRecordedCubes) {
  auto sp = compile_policy(shipped("one_user.arbac"));
  auto r = breach(sp);
  std::vector<std::string> got;
  for (const auto& c : r.fixpoint->cubes) got.push_back(to_string(*sp.signature, c));
  EXPECT_EQ(got, (std::vector<std::string>{
                     "(and (ua eu er6))",
                     "(and (ua eu er5))",
                     "(and (not (ua eu er4)) (ua eu er3))",
                     "(and (not (ua eu er4)) (ua eu er2))",
                     "(and (not (ua eu er4)) (ua eu er1))",
                 }));
}

TEST(Breach, GoalHoldingInitiallyIsReachableAtZero) {
  auto d = shipped("one_user.arbac");
  d.init.push_back({"eu", "er6"});
  auto sp = compile_policy(d);
  auto r = breach(sp);
  ASSERT_EQ(r.verdict, ReachVerdict::kReachable);
  EXPECT_EQ(r.steps, 0);
  ASSERT_TRUE(r.trace.has_value());
  ASSERT_EQ(r.trace->size(), 1u);
  EXPECT_TRUE(replay_run(make_concrete(d), to_run(make_concrete(d), *r.trace)));
}

TEST(Breach, WeakenedOneUserYieldsReplayableRun) {
  auto d = shipped("one_user.arbac");
  for (auto& rule : d.rules)
    if (rule.label == "can_assign_4") rule.pre[0].role.name = "er3";
  auto sp = compile_policy(d);
  auto r = breach(sp);
  ASSERT_EQ(r.verdict, ReachVerdict::kReachable);
  auto inst = make_concrete(d);
  auto fr = forward_reach(inst, *inst.goal);
  ASSERT_TRUE(fr.reachable);
  ASSERT_TRUE(r.trace.has_value());
  auto run = to_run(inst, *r.trace);
  EXPECT_TRUE(replay_run(inst, run));
  EXPECT_EQ(run.size(), fr.run.size());
  EXPECT_EQ(r.steps, 3);
  std::vector<std::string> labels;
  for (const auto& s : run) labels.push_back(s.label);
  EXPECT_EQ(labels, (std::vector<std::string>{"", "can_assign_1", "can_assign_2", "can_assign_4"}));
}

TEST(Breach, StaffNotReachableAtZero) {
  auto start = std::chrono::steady_clock::now();
  auto d = shipped("staff.arbac");
  auto sp = compile_policy(d);
  ReachOptions o;
  o.max_iterations = 0;
  auto r = breach(sp, o);
  EXPECT_NE(r.verdict, ReachVerdict::kReachable);
  auto full = breach(sp);
  EXPECT_EQ(full.verdict, ReachVerdict::kUnreachable);
  auto inst = make_concrete(d);
  EXPECT_FALSE(forward_reach(inst, *inst.goal).reachable);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 2.0);
}

TEST(Breach, StaffWithVariedGoalsMatchesOracle) {
  auto base = shipped("staff.arbac");
  std::vector<GoalDecl> goals;
  for (const char* role : {"ProjectLead", "FullTime", "PartTime", "Manager", "Employee"}) {
    for (const char* user : {"Alice", "Bob"}) {
      GoalDecl g;
      g.mode = GoalDecl::UserMode::kNamed;
      g.user = user;
      g.pairs.push_back(GoalPair{RoleRef{role, false, {}}, GoalPair::Cmp::kEq, std::nullopt});
      goals.push_back(g);
    }
  }
  auto with_hr = base;
  with_hr.init.push_back({"Bob", "HumanResource"});
  for (const auto& policy : {base, with_hr}) {
    for (const auto& g : goals) {
      auto d = policy;
      d.goal = g;
      auto sp = compile_policy(d);
      auto r = breach(sp);
      auto inst = make_concrete(d);
      auto fr = forward_reach(inst, g);
      ASSERT_EQ(r.verdict == ReachVerdict::kReachable, fr.reachable) << serialize_policy(d);
      if (fr.reachable) {
        EXPECT_TRUE(replay_run(inst, to_run(inst, *r.trace)));
      }
    }
  }
}

TEST(Breach, DifferentialAgainstForwardSearch) {
  int reachable = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto d = generate_policy(oracle_scale_params(seed));
    auto inst = make_concrete(d);
    auto fr = forward_reach(inst, *inst.goal);
    auto sp = compile_policy(d);
    auto r = breach(sp);
    ASSERT_NE(r.verdict, ReachVerdict::kInconclusive) << r.reason;
    ASSERT_EQ(r.verdict == ReachVerdict::kReachable, fr.reachable) << serialize_policy(d);
    EXPECT_LE(r.steps, 10'000);
    if (fr.reachable) {
      ++reachable;
      ASSERT_TRUE(r.trace.has_value());
      ASSERT_TRUE(replay_run(inst, to_run(inst, *r.trace))) << serialize_policy(d);
      // Breadth-first over depths: the symbolic run is as short as any.
      EXPECT_EQ(r.trace->size(), fr.run.size());
    }
  }
  EXPECT_GT(reachable, 10);
}

TEST(Breach, ChainIsMonotoneAndFixpointClosed) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto sp = compile_policy(generate_policy(oracle_scale_params(seed)));
    auto r = breach(sp);
    for (int n = 1; n <= r.steps; ++n)
      EXPECT_TRUE(entails(sp.signature, cubes_up_to(r, n - 1), cubes_up_to(r, n), sp.theory));
    if (r.verdict == ReachVerdict::kUnreachable) expect_closed(sp, *r.fixpoint);
  }
}

TEST(Breach, MonolithicModeAgrees) {
  ReachOptions mono;
  mono.mode = FixpointMode::kMonolithic;
  auto ad = compile_policy(shipped("one_user.arbac"));
  auto r = breach(ad, mono);
  EXPECT_EQ(r.verdict, ReachVerdict::kUnreachable);
  expect_closed(ad, *r.fixpoint);
  int compared = 0;
  for (std::uint64_t seed = 1; compared < 25; ++seed) {
    GenParams g = oracle_scale_params(seed);
    if (g.users > 2 || g.roles > 5) continue;
    auto d = generate_policy(g);
    auto inst = make_concrete(d);
    auto sp = compile_policy(d);
    auto m = breach(sp, mono);
    auto fr = forward_reach(inst, *inst.goal);
    ASSERT_NE(m.verdict, ReachVerdict::kInconclusive) << m.reason;
    ASSERT_EQ(m.verdict == ReachVerdict::kReachable, fr.reachable) << serialize_policy(d);
    if (fr.reachable) EXPECT_TRUE(replay_run(inst, to_run(inst, *m.trace)));
    ++compared;
  }
}

TEST(Breach, BudgetsGiveInconclusive) {
  auto sp = compile_policy(shipped("one_user.arbac"));
  ReachOptions o;
  o.max_iterations = 1;
  auto r = breach(sp, o);
  EXPECT_EQ(r.verdict, ReachVerdict::kInconclusive);
  EXPECT_EQ(r.reason, "iteration cap");
  ASSERT_TRUE(r.fixpoint.has_value());
  o = {};
  o.solver.budget.max_conflicts = 0;
  o.solver.budget.max_clauses = 1;
  EXPECT_EQ(breach(sp, o).verdict, ReachVerdict::kInconclusive);
}

TEST(Breach, StrictInitialAddsConstraints) {
  // The initial state violates the SMER pair, which the oracle discards.
  auto d = parse_policy(R"(
sort User sv A
sort Role sv R0 R1 R2
init A R0
init A R1
smer R0 R1
can_assign (pre R0) (target R2)
goal (user A) (pair R0)
)");
  auto sp = compile_policy(d);
  EXPECT_EQ(breach(sp).verdict, ReachVerdict::kReachable);
  ReachOptions strict;
  strict.strict_initial = true;
  EXPECT_EQ(breach(sp, strict).verdict, ReachVerdict::kUnreachable);
  auto inst = make_concrete(d);
  EXPECT_FALSE(forward_reach(inst, *inst.goal).reachable);
}

TEST(Bounded, OneUserUnsatAtEveryBound) {
  auto sp = compile_policy(shipped("one_user.arbac"));
  auto rs = bounded_reach_upto(sp, *sp.goal, 4);
  ASSERT_EQ(rs.size(), 5u);
  for (const auto& r : rs) EXPECT_EQ(r.verdict, Verdict::kUnsat) << r.bound;
}

TEST(Bounded, ZeroBoundWhenInitImpliesGoal) {
  auto d = shipped("one_user.arbac");
  d.init.push_back({"eu", "er6"});
  auto r = bounded_reach(compile_policy(d), *compile_policy(d).goal, 0);
  EXPECT_EQ(r.verdict, Verdict::kSat);
  EXPECT_EQ(r.states.size(), 1u);
}

// Deepest level of the forward search over the whole reachable space.
int diameter(const ConcreteInstance& inst) {
  std::set<UaState> seen;
  std::vector<UaState> layer;
  for (UaState s : inst.init)
    if (satisfies_constraints(inst, s) && seen.insert(s).second) layer.push_back(s);
  int depth = 0;
  while (true) {
    std::vector<UaState> next;
    for (UaState s : layer)
      for (const auto& r : inst.rules)
        for (UaState t : step(inst, r, s))
          if (satisfies_constraints(inst, t) && seen.insert(t).second) next.push_back(t);
    if (next.empty()) return depth;
    layer = std::move(next);
    ++depth;
  }
}

TEST(Bounded, AgreesWithBreadthFirstSearch) {
  int instances = 0, deep = 0;
  for (std::uint64_t seed = 1; instances < 30; ++seed) {
    GenParams g = oracle_scale_params(seed);
    if (g.users > 2 || g.roles > 5) continue;
    auto d = generate_policy(g);
    auto inst = make_concrete(d);
    auto fr = forward_reach(inst, *inst.goal);
    ++instances;
    auto sp = compile_policy(d);
    int depth = fr.reachable ? static_cast<int>(fr.run.size()) - 1 : std::min(diameter(inst), 3);
    auto rs = bounded_reach_upto(sp, *sp.goal, depth);
    if (!fr.reachable) {
      EXPECT_EQ(rs.back().verdict, Verdict::kUnsat) << serialize_policy(d);
      continue;
    }
    ASSERT_EQ(rs.back().verdict, Verdict::kSat) << serialize_policy(d);
    ASSERT_EQ(rs.back().bound, depth);
    deep += depth > 0;
    std::vector<RunStep> run;
    for (int k = 0; k <= depth; ++k)
      run.push_back(RunStep{k ? rs.back().labels[k - 1] : "",
                            from_configuration(inst, rs.back().states[k])});
    EXPECT_TRUE(replay_run(inst, run));
    auto r = breach(sp);
    ASSERT_EQ(r.verdict, ReachVerdict::kReachable);
    EXPECT_LE(r.steps, depth);
  }
  EXPECT_GT(deep, 0);
}

}  // namespace
}  // namespace arbac
