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
#include <random>

#include "arbac/bsr/solver.hpp"
#include "arbac/fol/canonical.hpp"
#include "arbac/fol/print.hpp"
#include "arbac/oracle/concrete.hpp"
#include "arbac/oracle/eval.hpp"
#include "arbac/policy/dsl.hpp"
#include "arbac/preimage/preimage.hpp"
#include "test_util.hpp"

namespace arbac {
namespace {

using testing::compile_shipped;
using testing::random_cube;
using testing::random_exists;

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// A guard with a user variable as subject and a constant or variable target.
TransitionRule random_rule(std::mt19937_64& rng, const Signature& sig) {
  TransitionRule t;
  t.kind = uniform(rng, 0, 1) ? TransitionRule::Kind::kAssign : TransitionRule::Kind::kRevoke;
  t.guard = random_cube(rng, sig, 2, 3);
  auto next_id = [&](SortId s) {
    int m = -1;
    for (const auto& v : t.guard.vars)
      if (v.sort == s) m = std::max(m, v.id);
    return m + 1;
  };
  t.subject = Term::var(kUserSort, next_id(kUserSort));
  t.guard.vars.push_back(t.subject);
  if (uniform(rng, 0, 2) == 0) {
    t.target = Term::var(kRoleSort, next_id(kRoleSort));
    t.guard.vars.push_back(t.target);
  } else {
    const auto& rs = sig.constants_of(kRoleSort);
    t.target = Term::constant(kRoleSort, rs[uniform(rng, 0, static_cast<int>(rs.size()) - 1)]);
  }
  std::sort(t.guard.vars.begin(), t.guard.vars.end());
  t.label = "t";
  return t;
}

// Random interpretation of everything but ua, within the bound.
Configuration random_base(std::mt19937_64& rng, const SignaturePtr& sig,
                          const std::vector<int>& bound) {
  std::vector<int> sizes;
  for (int b : bound) sizes.push_back(uniform(rng, 1, b));
  Configuration c(sig, sizes);
  for (ConstId k = 0; k < sig->num_constants(); ++k)
    c.set_constant(k, uniform(rng, 0, sizes[sig->constant(k).sort] - 1));
  for (PredId p : {kPa, kGeq})
    for (auto& b : c.mutable_extension(p)) b = uniform(rng, 0, 1);
  return c;
}

// Calls f on every ua extension over the base.
template <typename F>
void for_each_ua(const Configuration& base, F&& f) {
  Configuration c = base;
  std::size_t n = c.extension_size(kUa);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    auto& ext = c.mutable_extension(kUa);
    for (std::size_t i = 0; i < n; ++i) ext[i] = (m >> i) & 1;
    f(c);
  }
}

bool some_successor_satisfies(const TransitionRule& t, const Configuration& s,
                              const ExistsFormula& k) {
  for (const auto& n : step_symbolic(t, s))
    if (eval_formula(n, k)) return true;
  return false;
}

TEST(PreImage, FalseMapsToFalse) {
  auto sp = compile_shipped("staff.arbac");
  for (const auto& t : sp.transitions) {
    EXPECT_TRUE(pre_image(t, ExistsFormula::falsity()).is_false());
    EXPECT_TRUE(pre_image(t, ExistsFormula::falsity(), &sp.facts).is_false());
  }
  EXPECT_TRUE(pre_image_all(sp.transitions, ExistsFormula::falsity()).formula.is_false());
}

TEST(PreImage, MatchesConcreteStepOnRandomStructures) {
  std::mt19937_64 rng(11);
  auto sig = testing::small_signature(1, 2, 1);
  const std::vector<int> bound = {2, 4, 1};
  long checked = 0;
  for (int round = 0; round < 80; ++round) {
    TransitionRule t = random_rule(rng, *sig);
    ExistsFormula k = random_exists(rng, *sig, 2, 2, 3);
    ExistsFormula pre = pre_image(t, k);
    for (int b = 0; b < 3; ++b) {
      for_each_ua(random_base(rng, sig, bound), [&](const Configuration& s) {
        ASSERT_EQ(eval_formula(s, pre), some_successor_satisfies(t, s, k))
            << to_string(*sig, t.guard) << "\nk = " << to_string(*sig, k)
            << "\npre = " << to_string(*sig, pre) << "\n" << to_string(s);
        ++checked;
      });
    }
  }
  EXPECT_GT(checked, 10000);
}

TEST(PreImage, DistributesOverRules) {
  std::mt19937_64 rng(12);
  auto sig = testing::small_signature(1, 2, 1);
  for (int round = 0; round < 40; ++round) {
    std::vector<TransitionRule> ts;
    for (int i = 0; i < 3; ++i) ts.push_back(random_rule(rng, *sig));
    ExistsFormula k = random_exists(rng, *sig, 2, 2, 3);
    LabeledPreImage all = pre_image_all(ts, k);
    ASSERT_EQ(all.rule.size(), all.formula.cubes.size());
    std::vector<ExistsFormula> each;
    for (const auto& t : ts) each.push_back(pre_image(t, k));
    for (int b = 0; b < 2; ++b) {
      for_each_ua(random_base(rng, sig, {2, 4, 1}), [&](const Configuration& s) {
        bool any = false;
        for (const auto& e : each) any = any || eval_formula(s, e);
        ASSERT_EQ(eval_formula(s, all.formula), any);
      });
    }
  }
}

// Two users, three roles (R0 above R1), one permission on R1; every theory
// model is a ua extension of one fixed structure.
constexpr const char* kSmallPolicy = R"(
sort User sv A B
sort Role sv R0 R1 R2
sort Permission sv P
hierarchy R0 R1
pa P R1
can_assign (admin R0) (pre R1 (not R2)) (target R2)
can_assign (admin R2) (pre (explicit R0)) (target R1)
can_revoke (admin R1) (target R0)
can_revoke (admin R0) (target R2)
)";

struct TheoryModels {
  SymbolicPolicy sp;
  ConcreteInstance inst;
  std::vector<Configuration> models;
};

TheoryModels theory_models(const PolicyDecls& d) {
  TheoryModels m{compile_policy(d), make_concrete(d), {}};
  int n = m.inst.num_users() * m.inst.num_roles();
  for (UaState s = 0; s < (UaState{1} << n); ++s)
    m.models.push_back(to_configuration(m.inst, s));
  return m;
}

TEST(PreImage, ConcreteModelsSatisfyTheory) {
  for (auto d : {parse_policy(kSmallPolicy),
                 load_policy_file(testing::policy_path("one_user.arbac"))}) {
    auto m = theory_models(d);
    for (const auto& c : m.models) ASSERT_TRUE(eval_formula(c, m.sp.theory));
  }
}

TEST(PreImage, SimplifiedMatchesConcreteStepModuloTheory) {
  std::mt19937_64 rng(13);
  for (auto d : {parse_policy(kSmallPolicy),
                 load_policy_file(testing::policy_path("one_user.arbac"))}) {
    auto m = theory_models(d);
    const Signature& sig = *m.sp.signature;
    for (int round = 0; round < 30; ++round) {
      ExistsFormula k = random_exists(rng, sig, 2, 2, 3);
      for (const auto& t : m.sp.transitions) {
        ExistsFormula raw = pre_image(t, k);
        ExistsFormula simp = pre_image(t, k, &m.sp.facts);
        for (const auto& s : m.models) {
          bool expect = some_successor_satisfies(t, s, k);
          ASSERT_EQ(eval_formula(s, raw), expect);
          ASSERT_EQ(eval_formula(s, simp), expect)
              << t.label << "\nk = " << to_string(sig, k) << "\npre = " << to_string(sig, simp);
        }
      }
    }
  }
}

TEST(Simplify, PreservesModelsAndNeverGrows) {
  std::mt19937_64 rng(14);
  auto m = theory_models(parse_policy(kSmallPolicy));
  const Signature& sig = *m.sp.signature;
  int shrunk = 0;
  for (int round = 0; round < 100; ++round) {
    ExistsFormula f = random_exists(rng, sig, 3, 2, 4);
    ExistsFormula g = simplify(f, m.sp.facts);
    ExistsFormula x = expand_closed(f, m.sp.facts);
    EXPECT_LE(g.cubes.size(), f.cubes.size());
    if (g.cubes.size() < f.cubes.size()) ++shrunk;
    for (const auto& s : m.models) {
      bool v = eval_formula(s, f);
      ASSERT_EQ(eval_formula(s, g), v) << to_string(sig, f) << "\n=> " << to_string(sig, g);
      ASSERT_EQ(eval_formula(s, x), v);
    }
  }
  EXPECT_GT(shrunk, 0);
}

TEST(Simplify, CollapsesScalarEqualities) {
  auto sp = compile_shipped("one_user.arbac");
  const Signature& sig = *sp.signature;
  auto f = parse_exists(sig,
                        "(exists ((u0 User) (u1 User) (r0 Role)) "
                        "(and (ua u0 r0) (= r0 er5) (not (= u1 u0)) (ua u1 er2)))");
  EXPECT_TRUE(simplify(f, sp.facts).is_false());
  auto g = parse_exists(sig, "(exists ((u0 User) (r0 Role)) (and (ua u0 r0) (= r0 er5)))");
  EXPECT_EQ(to_string(sig, simplify(g, sp.facts)), "(and (ua eu er5))");
}

TEST(PreImage, OneUserAssignFour) {
  auto sp = compile_shipped("one_user.arbac");
  const Signature& sig = *sp.signature;
  const TransitionRule* t = nullptr;
  for (const auto& r : sp.transitions)
    if (r.label == "can_assign_4") t = &r;
  ASSERT_NE(t, nullptr);
  auto expected =
      parse_exists(sig, "(exists ((u User) (r Role)) (and (ua u r) (= u eu) (= r er5)))");
  for (const TheoryFacts* facts : {static_cast<const TheoryFacts*>(nullptr), static_cast<const TheoryFacts*>(&sp.facts)}) {
    ExistsFormula pre = pre_image(*t, *sp.goal, facts);
    EXPECT_TRUE(entails(sp.signature, pre, expected, sp.theory)) << to_string(sig, pre);
    EXPECT_TRUE(entails(sp.signature, expected, pre, sp.theory)) << to_string(sig, pre);
  }
}

// Model-set equality over every theory model within the oracle bound; with
// scalar sorts and completed hierarchy and pa these are the ua extensions of
// one structure. Returns the model count of a, or -1 on a mismatch.
long compare_model_sets(const PolicyDecls& d, const ExistsFormula& a, const ExistsFormula& b) {
  auto inst = make_concrete(d);
  Configuration c = to_configuration(inst, 0);
  int n = inst.num_users() * inst.num_roles();
  long models = 0;
  for (UaState s = 0; s < (UaState{1} << n); ++s) {
    auto& ext = c.mutable_extension(kUa);
    for (int i = 0; i < n; ++i) ext[i] = (s >> i) & 1;
    bool va = eval_formula(c, a);
    if (va != eval_formula(c, b)) {
      ADD_FAILURE() << to_string(c);
      return -1;
    }
    models += va;
  }
  return models;
}

ExistsFormula load_fixture(const Signature& sig) {
  return parse_exists(sig, testing::read_file(std::string(ARBAC_FIXTURE_DIR) +
                                              "/assign_rule2_preimage.sexpr"));
}

TEST(PreImage, TrustedAssignRuleTwoMatchesFixture) {
  auto sp = compile_shipped("trusted_assign.arbac");
  ASSERT_EQ(sp.transitions[1].label, "assign_2");
  ExistsFormula fixture = load_fixture(*sp.signature);
  ASSERT_EQ(fixture.cubes.size(), 3u);
  ExistsFormula pre = pre_image(sp.transitions[1], *sp.goal, &sp.facts);
  EXPECT_TRUE(entails(sp.signature, pre, fixture, sp.theory));
  EXPECT_TRUE(entails(sp.signature, fixture, pre, sp.theory));
  // Access is granted only to Employee, below FullTime, so both sides are
  // empty under the declared pa.
  EXPECT_EQ(compare_model_sets(load_policy_file(testing::policy_path("trusted_assign.arbac")), pre, fixture),
            0);
}

TEST(PreImage, TrustedAssignRuleTwoMatchesFixtureWithAccessOnFullTime) {
  auto d = load_policy_file(testing::policy_path("trusted_assign.arbac"));
  d.pa.push_back({"Access", "FullTime"});
  auto sp = compile_policy(d);
  ExistsFormula fixture = load_fixture(*sp.signature);
  ExistsFormula pre = pre_image(sp.transitions[1], *sp.goal, &sp.facts);
  EXPECT_TRUE(entails(sp.signature, pre, fixture, sp.theory));
  EXPECT_TRUE(entails(sp.signature, fixture, pre, sp.theory));
  // Alice can always be given FullTime once some admin other than Carol is
  // in HumanResource.
  EXPECT_EQ(to_string(*sp.signature, pre),
            "(exists ((u0 User)) (and (not (= u0 Carol)) (ua u0 HumanResource)))");
  EXPECT_GT(compare_model_sets(d, pre, fixture), 0);
}

}  // namespace
}  // namespace arbac
