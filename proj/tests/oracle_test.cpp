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

#include <random>

#include "arbac/errors.hpp"
#include "arbac/fol/print.hpp"
#include "arbac/oracle/concrete.hpp"
#include "arbac/oracle/eval.hpp"
#include "arbac/policy/dsl.hpp"
#include "test_util.hpp"

namespace arbac {
namespace {

PolicyDecls shipped(const std::string& name) {
  return load_policy_file(testing::policy_path(name));
}

UaState state_of(const ConcreteInstance& inst,
                 std::initializer_list<std::pair<const char*, const char*>> pairs) {
  UaState s = 0;
  for (const auto& [u, r] : pairs) {
    int ui = static_cast<int>(std::find(inst.users.begin(), inst.users.end(), u) - inst.users.begin());
    int ri = static_cast<int>(std::find(inst.roles.begin(), inst.roles.end(), r) - inst.roles.begin());
    s |= UaState{1} << inst.bit(ui, ri);
  }
  return s;
}

const ConcreteRule& rule_named(const ConcreteInstance& inst, const std::string& label) {
  for (const auto& r : inst.rules)
    if (r.label == label) return r;
  throw std::runtime_error("no rule " + label);
}

TEST(Concrete, StaffStructure) {
  auto inst = make_concrete(shipped("staff.arbac"));
  EXPECT_EQ(inst.num_users(), 3);
  EXPECT_EQ(inst.num_roles(), 7);
  ASSERT_EQ(inst.init.size(), 1u);
  EXPECT_EQ(state_to_string(inst, inst.init[0]),
            "{(Alice,Engineer), (Alice,PartTime), (Bob,Manager), (Carol,HumanResource)}");
  // Closure: Manager >= FullTime >= Employee.
  EXPECT_TRUE(inst.geq[6][0]);
  EXPECT_FALSE(inst.geq[0][6]);
  EXPECT_TRUE(inst.member(inst.init[0], 1, 0));
}

TEST(Concrete, TrustedAdminDisablesRule) {
  auto inst = make_concrete(shipped("staff.arbac"));
  UaState s0 = inst.init[0];
  // Carol is the only HumanResource member and she is trusted.
  EXPECT_TRUE(step(inst, rule_named(inst, "make_fulltime"), s0).empty());
  UaState s1 = s0 | state_of(inst, {{"Bob", "HumanResource"}});
  EXPECT_EQ(step(inst, rule_named(inst, "make_fulltime"), s1).size(), 3u);
}

TEST(Concrete, RevokeOfAbsentPairIsNoOp) {
  auto inst = make_concrete(shipped("staff.arbac"));
  UaState s0 = inst.init[0];
  auto succ = step(inst, rule_named(inst, "drop_lead"), s0);
  ASSERT_EQ(succ, std::vector<UaState>{s0});
  auto drop = step(inst, rule_named(inst, "drop_engineer"), s0);
  EXPECT_EQ(drop.size(), 2u);
  EXPECT_TRUE(std::find(drop.begin(), drop.end(), s0 & ~state_of(inst, {{"Alice", "Engineer"}})) !=
              drop.end());
}

TEST(Concrete, ImplicitPreconditionUsesSeniority) {
  auto inst = make_concrete(shipped("staff.arbac"));
  // Bob is a Manager, hence FullTime, but not an Engineer.
  UaState s = inst.init[0] | state_of(inst, {{"Bob", "ProjectLead"}});
  auto succ = step(inst, rule_named(inst, "promote_lead"), s);
  EXPECT_EQ(succ, std::vector<UaState>{s});
}

TEST(Concrete, StaffUnreachable) {
  auto inst = make_concrete(shipped("staff.arbac"));
  auto res = forward_reach(inst, *inst.goal);
  EXPECT_FALSE(res.reachable);
  EXPECT_GT(res.states, 1);
}

TEST(Concrete, OneUserUnreachableWithinEightBits) {
  auto inst = make_concrete(shipped("one_user.arbac"));
  auto res = forward_reach(inst, *inst.goal);
  EXPECT_FALSE(res.reachable);
  EXPECT_LE(res.states, 256);
  auto all = reachable_states(inst, inst.init);
  EXPECT_EQ(static_cast<long>(all.size()), res.states);
  for (UaState s : all) EXPECT_FALSE(satisfies_goal(inst, *inst.goal, s));
}

TEST(Concrete, GoalHoldingInitiallyGivesSingleStateRun) {
  auto d = shipped("one_user.arbac");
  d.goal->pairs[0].role.name = "er4";
  auto inst = make_concrete(d);
  auto res = forward_reach(inst, *inst.goal);
  ASSERT_TRUE(res.reachable);
  ASSERT_EQ(res.run.size(), 1u);
  EXPECT_TRUE(replay_run(inst, res.run));
}

TEST(Concrete, RunsReplayAndTamperingIsDetected) {
  auto d = shipped("one_user.arbac");
  d.goal->pairs[0].role.name = "er8";
  auto inst = make_concrete(d);
  auto res = forward_reach(inst, *inst.goal);
  ASSERT_TRUE(res.reachable);
  EXPECT_EQ(res.run.back().label, "can_assign_6");
  EXPECT_TRUE(replay_run(inst, res.run));
  EXPECT_EQ(res.depth, static_cast<int>(res.run.size()) - 1);
  auto bad = res.run;
  bad.back().label = "can_assign_1";
  EXPECT_FALSE(replay_run(inst, bad));
  bad = res.run;
  bad.front().state ^= 1;
  EXPECT_FALSE(replay_run(inst, bad));
}

TEST(Concrete, SmerPrunesStates) {
  auto d = parse_policy(R"(
sort User sv A
sort Role sv R0 R1
sort Permission sv
init A R0
can_assign (target R1)
smer R0 R1
goal (user A) (pair R1)
)");
  auto inst = make_concrete(d);
  EXPECT_FALSE(forward_reach(inst, *inst.goal).reachable);
  d.smer.clear();
  EXPECT_TRUE(forward_reach(make_concrete(d), *d.goal).reachable);
}

TEST(Concrete, StateCapThrows) {
  auto d = parse_policy(R"(
sort User sv A B C
sort Role sv R0 R1 R2 R3
can_assign (target R0)
can_assign (target R1)
can_assign (target R2)
goal (user A) (pair R3)
)");
  auto inst = make_concrete(d);
  EXPECT_THROW(forward_reach(inst, *inst.goal, 100), StateSpaceCap);
  EXPECT_EQ(forward_reach(inst, *inst.goal).states, 512);
}

TEST(Concrete, RejectsUnsupportedInstances) {
  auto d = parse_policy("sort User open A B\nsort Role sv R0\n");
  EXPECT_THROW(make_concrete(d), UnsupportedInstance);
  auto big = parse_policy(
      "sort User sv U0 U1 U2 U3 U4 U5 U6 U7 U8\nsort Role sv R0 R1 R2 R3 R4 R5 R6 R7\n");
  EXPECT_THROW(make_concrete(big), UnsupportedInstance);
}

// Every state of a small instance, with the compiled policy next to it.
struct Both {
  SymbolicPolicy sp;
  ConcreteInstance inst;
  std::vector<UaState> states;
};

Both both(const PolicyDecls& d) {
  Both b{compile_policy(d), make_concrete(d), {}};
  int n = b.inst.num_users() * b.inst.num_roles();
  for (UaState s = 0; s < (UaState{1} << n); ++s) b.states.push_back(s);
  return b;
}

constexpr const char* kMixed = R"(
sort User sv A B
sort Role sv R0 R1 R2 R3
sort Permission sv P Q
hierarchy R0 R1
hierarchy R1 R2
pa P R2
pa Q R3
init A R0
can_assign (admin R1) (pre R2 (not R3)) (target R3) (trusted B)
can_assign (admin R3) (pre (explicit R1)) (target R2)
can_assign (pre (not R0)) (target R1)
can_revoke (admin R2) (target R0)
can_revoke (target R3)
smer R0 R3
goal (user distinct) (pair (>= R2) P) (pair R3 Q)
)";

TEST(Concrete, StepAgreesWithCompiledRules) {
  for (auto d : {parse_policy(kMixed), shipped("one_user.arbac")}) {
    auto b = both(d);
    ASSERT_EQ(b.sp.transitions.size(), b.inst.rules.size());
    for (size_t i = 0; i < b.inst.rules.size(); ++i) {
      // Guards carry SMER strengthening, so compare on constraint-respecting
      // states and successors only.
      auto keep = [&](std::vector<UaState> v) {
        std::erase_if(v, [&](UaState t) { return !satisfies_constraints(b.inst, t); });
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
      };
      for (UaState s : b.states) {
        if (!satisfies_constraints(b.inst, s)) continue;
        std::vector<UaState> sym;
        for (const auto& c : step_symbolic(b.sp.transitions[i], to_configuration(b.inst, s)))
          sym.push_back(from_configuration(b.inst, c));
        ASSERT_EQ(keep(sym), keep(step(b.inst, b.inst.rules[i], s)))
            << b.inst.rules[i].label << " at " << state_to_string(b.inst, s);
      }
    }
  }
}

TEST(Concrete, GoalConstraintsAndInitAgreeWithCompiledFormulas) {
  for (auto d : {parse_policy(kMixed), shipped("one_user.arbac")}) {
    auto b = both(d);
    for (UaState s : b.states) {
      Configuration c = to_configuration(b.inst, s);
      ASSERT_EQ(from_configuration(b.inst, c), s);
      ASSERT_EQ(eval_formula(c, *b.sp.goal), satisfies_goal(b.inst, *b.inst.goal, s))
          << state_to_string(b.inst, s);
      bool cons = true;
      for (const auto& f : b.sp.constraints) cons = cons && eval_formula(c, f);
      ASSERT_EQ(cons, satisfies_constraints(b.inst, s));
      bool is_init = std::find(b.inst.init.begin(), b.inst.init.end(), s) != b.inst.init.end();
      ASSERT_EQ(eval_formula(c, b.sp.init), is_init);
    }
  }
}

TEST(Concrete, InitFormulaEnumeratesStates) {
  auto d = parse_policy(R"(
sort User sv A B
sort Role sv R0 R1
init_formula (forall ((u User) (r Role)) (or (not (ua u r)) (= r R0)))
)");
  auto inst = make_concrete(d);
  EXPECT_EQ(inst.init.size(), 4u);
}

}  // namespace
}  // namespace arbac
