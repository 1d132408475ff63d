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

// Acceptance harness: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.
//
//   acceptance [bench.csv]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arbac/bsr/solver.hpp"
#include "arbac/cli/cli.hpp"
#include "arbac/fol/print.hpp"
#include "arbac/oracle/brute_force.hpp"
#include "arbac/oracle/concrete.hpp"
#include "arbac/oracle/eval.hpp"
#include "arbac/policy/dsl.hpp"
#include "arbac/policy/generate.hpp"
#include "arbac/preimage/preimage.hpp"
#include "arbac/reach/breach.hpp"
#include "test_util.hpp"

namespace arbac {
namespace {

// Pinned tolerances.
constexpr double kOneUserSeconds = 5.0;
constexpr long kOneUserStates = 256;
constexpr double kStaffInitSeconds = 2.0;
constexpr int kDifferentialInstances = 200;
constexpr int kBsrProblems = 500;
constexpr int kBenchInstances = 32;
constexpr double kBenchBudgetSeconds = 60.0;
constexpr int kMaxIterations = 10'000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << detail
            << std::endl;
  failures += !ok;
}

std::string fmt(double x, int prec = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(prec);
  s << x;
  return s.str();
}

std::vector<RunStep> to_run(const ConcreteInstance& inst, const std::vector<TraceStep>& trace) {
  std::vector<RunStep> run;
  for (const auto& s : trace) run.push_back(RunStep{s.label, from_configuration(inst, s.state)});
  return run;
}

bool equivalent(const SymbolicPolicy& sp, const ExistsFormula& a, const ExistsFormula& b) {
  return entails(sp.signature, a, b, sp.theory) && entails(sp.signature, b, a, sp.theory);
}

// Runs a gtest binary with a filter; ok when every selected test passed.
struct GtestOutcome {
  bool ok = false;
  int passed = 0;
  int skipped = 0;
};

GtestOutcome run_gtest(const std::string& binary, const std::string& filter) {
  std::string cmd = "'" + binary + "' --gtest_filter='" + filter + "' 2>&1";
  GtestOutcome o;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return o;
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  std::istringstream lines(out);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("[  PASSED  ] ", 0) == 0) o.passed = std::atoi(line.c_str() + 13);
    if (line.rfind("[  SKIPPED ] ", 0) == 0 && line.find("test") != std::string::npos &&
        line.find('.') == std::string::npos)
      o.skipped = std::atoi(line.c_str() + 13);
  }
  o.ok = status == 0 && o.passed > 0;
  if (!o.ok) std::cerr << out;
  return o;
}

void criterion_one_user() {
  auto start = Clock::now();
  auto d = load_policy_file(testing::policy_path("one_user.arbac"));
  auto sp = compile_policy(d);
  auto r = breach(sp);
  bool unreachable = r.verdict == ReachVerdict::kUnreachable && r.fixpoint;
  auto b1 = parse_exists(*sp.signature,
                         "(exists ((u User) (r Role)) (and (ua u r) (= u eu) (= r er5)))");
  bool cube = false;
  if (unreachable)
    for (const auto& c : r.fixpoint->cubes) cube = cube || equivalent(sp, ExistsFormula::of(c), b1);
  auto inst = make_concrete(d);
  auto fr = forward_reach(inst, *inst.goal);
  double secs = seconds_since(start);
  bool ok = unreachable && cube && !fr.reachable && fr.states <= kOneUserStates &&
            secs < kOneUserSeconds;
  report(1, "one-user golden", ok,
         std::string("verdict ") + to_string(r.verdict) + ", er5 cube " + (cube ? "found" : "missing") +
             ", oracle " + (fr.reachable ? "reachable" : "unreachable") + " over " +
             std::to_string(fr.states) + " states, " + fmt(secs) + " s");
}

void criterion_staff_init() {
  auto start = Clock::now();
  auto sp = testing::compile_shipped("staff.arbac");
  ReachOptions o;
  o.max_iterations = 0;
  auto r = breach(sp, o);
  // The proof obligation In and goal, checked directly.
  BSRProblem po{sp.signature, {}, {}};
  po.add(sp.theory);
  po.add(sp.init);
  po.add(*sp.goal);
  bool unsat = check_sat(po).verdict == Verdict::kUnsat;
  double secs = seconds_since(start);
  bool ok = unsat && r.verdict != ReachVerdict::kReachable && secs < kStaffInitSeconds;
  report(2, "staff init excludes goal", ok,
         std::string("In and goal ") + (unsat ? "unsat" : "sat") + ", breach at 0 " +
             to_string(r.verdict) + ", " + fmt(secs) + " s");
}

void criterion_fixture_preimage() {
  auto d = load_policy_file(testing::policy_path("trusted_assign.arbac"));
  auto sp = compile_policy(d);
  ExistsFormula fixture = parse_exists(
      *sp.signature, testing::read_file(std::string(ARBAC_FIXTURE_DIR) + "/assign_rule2_preimage.sexpr"));
  ExistsFormula pre = pre_image(sp.transitions[1], *sp.goal, &sp.facts);
  bool two_way = equivalent(sp, pre, fixture);
  auto inst = make_concrete(d);
  Configuration c = to_configuration(inst, 0);
  int n = inst.num_users() * inst.num_roles();
  long mismatches = 0, states = 0;
  for (UaState s = 0; s < (UaState{1} << n); ++s, ++states) {
    auto& ext = c.mutable_extension(kUa);
    for (int i = 0; i < n; ++i) ext[i] = (s >> i) & 1;
    mismatches += eval_formula(c, pre) != eval_formula(c, fixture);
  }
  bool ok = sp.transitions[1].label == "assign_2" && fixture.cubes.size() == 3 && two_way &&
            mismatches == 0;
  report(3, "trusted-assign pre-image", ok,
         std::string("entails both ways ") + (two_way ? "yes" : "no") + ", bound (" +
             std::to_string(inst.num_users()) + "," + std::to_string(inst.num_roles()) + "," +
             std::to_string(inst.perms.size()) + "), " + std::to_string(mismatches) +
             " mismatches over " + std::to_string(states) + " states");
}

struct DifferentialRun {
  SymbolicPolicy sp;
  ReachResult r;
};

std::vector<DifferentialRun> criterion_differential() {
  std::vector<DifferentialRun> runs;
  int agree = 0, reachable = 0, replayed = 0, smer = 0;
  for (int seed = 1; seed <= kDifferentialInstances; ++seed) {
    GenParams g = oracle_scale_params(static_cast<std::uint64_t>(seed));
    smer += g.smer_pairs > 0;
    auto d = generate_policy(g);
    auto inst = make_concrete(d);
    auto fr = forward_reach(inst, *inst.goal);
    auto sp = compile_policy(d);
    auto r = breach(sp);
    bool same = r.verdict != ReachVerdict::kInconclusive &&
                (r.verdict == ReachVerdict::kReachable) == fr.reachable;
    agree += same;
    if (same && fr.reachable) {
      ++reachable;
      replayed += r.trace && replay_run(inst, to_run(inst, *r.trace));
    }
    runs.push_back({std::move(sp), std::move(r)});
  }
  bool ok = agree == kDifferentialInstances && replayed == reachable && smer > 0;
  report(4, "differential soundness", ok,
         std::to_string(agree) + "/" + std::to_string(kDifferentialInstances) + " agree, " +
             std::to_string(replayed) + "/" + std::to_string(reachable) +
             " reachable traces replay, " + std::to_string(smer) + " with SMERs");
  return runs;
}

void criterion_bsr() {
  std::mt19937_64 rng(2024);
  SolverOptions opts;
  opts.verify_model = true;
  std::string ext = default_external_solver();
  int agree = 0, ext_agree = 0, ext_run = 0;
  for (int i = 0; i < kBsrProblems; ++i) {
    BSRProblem p = random_bsr_problem(rng);
    Verdict v = check_sat(p, opts).verdict;
    agree += (v == Verdict::kSat) == brute_force_sat(p).has_value() && v != Verdict::kTimeout;
    if (!ext.empty()) {
      ++ext_run;
      auto theirs = run_external_solver(ext, export_smtlib(p));
      ext_agree += theirs && *theirs == v;
    }
  }
  std::string ext_detail = ext.empty() ? "no external solver configured"
                                       : std::to_string(ext_agree) + "/" + std::to_string(ext_run) +
                                             " agree with " + ext;
  report(5, "BSR solver", agree == kBsrProblems && ext_agree == ext_run,
         std::to_string(agree) + "/" + std::to_string(kBsrProblems) + " agree with brute force, " +
             ext_detail);
}

ExistsFormula cubes_up_to(const ReachResult& r, int depth) {
  ExistsFormula f;
  for (const auto& c : r.cubes)
    if (c.depth <= depth) f.cubes.push_back(c.cube);
  return f;
}

void criterion_properties(const std::vector<DifferentialRun>& runs) {
  int chains = 0, chain_ok = 0, closed = 0, closed_ok = 0;
  for (const auto& [sp, r] : runs) {
    ++chains;
    bool mono = true;
    for (int n = 1; n <= r.steps && mono; ++n)
      mono = entails(sp.signature, cubes_up_to(r, n - 1), cubes_up_to(r, n), sp.theory);
    chain_ok += mono;
    if (r.verdict != ReachVerdict::kUnreachable) continue;
    ++closed;
    ExistsFormula pre = pre_image_all(sp.transitions, *r.fixpoint, &sp.facts).formula;
    closed_ok += entails(sp.signature, pre, *r.fixpoint, sp.theory, sp.constraints);
  }
  auto dist = run_gtest(ARBAC_PREIMAGE_TEST, "PreImage.DistributesOverRules");
  auto diagram = run_gtest(ARBAC_FOL_TEST, "Embeds.DiagramMatchesEmbedding*");
  auto containment = run_gtest(ARBAC_BSR_TEST, "Entails.AgreesWithModelContainment");
  bool ok = chain_ok == chains && closed_ok == closed && dist.ok && diagram.ok && containment.ok;
  auto word = [](const GtestOutcome& o) { return o.ok ? std::string("pass") : std::string("fail"); };
  report(6, "property suites", ok,
         "chain monotone " + std::to_string(chain_ok) + "/" + std::to_string(chains) +
             ", fixpoint closed " + std::to_string(closed_ok) + "/" + std::to_string(closed) +
             ", distributivity " + word(dist) + ", diagram vs embedding " + word(diagram) +
             ", entailment vs containment (200 pairs) " + word(containment));
}

void criterion_analyses() {
  auto inv = run_gtest(ARBAC_ANALYSES_TEST, "Invariant.*");
  auto con = run_gtest(ARBAC_ANALYSES_TEST, "Containment.*");
  auto wp = run_gtest(ARBAC_ANALYSES_TEST, "WeakestPrecondition.*");
  report(7, "analyses", inv.ok && con.ok && wp.ok,
         "invariant tests " + std::to_string(inv.passed) + (inv.ok ? " pass" : " fail") +
             ", containment " + std::to_string(con.passed) + (con.ok ? " pass" : " fail") +
             ", weakest precondition " + std::to_string(wp.passed) + (wp.ok ? " pass" : " fail"));
}

std::vector<cli::BenchRow> criterion_bench(const std::string& csv_path) {
  cli::BenchConfig cfg;
  cfg.family.assign_rules = 8;
  cfg.family.revoke_rules = 4;
  cfg.instances = kBenchInstances;
  cfg.timeout_s = kBenchBudgetSeconds;
  auto start = Clock::now();
  auto rows = cli::run_bench(cfg);
  double secs = seconds_since(start);
  {
    std::ofstream f(csv_path);
    cli::write_bench_csv(rows, f);
  }
  std::ifstream in(csv_path);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  auto med = cli::median_iterations(rows, cfg.goal_sizes);
  bool within = true;
  double slowest = 0;
  for (const auto& r : rows) {
    within = within && r.verdict != ReachVerdict::kInconclusive &&
             r.wall_ms <= kBenchBudgetSeconds * 1000;
    slowest = std::max(slowest, r.wall_ms);
  }
  bool monotone = std::is_sorted(med.begin(), med.end());
  std::string m;
  for (std::size_t i = 0; i < med.size(); ++i) m += (i ? "," : "") + fmt(med[i], 1);
  bool ok = within && monotone && lines == rows.size() + 1 &&
            rows.size() == cfg.goal_sizes.size() * kBenchInstances;
  report(8, "scaling", ok,
         std::to_string(rows.size()) + " instances, slowest " + fmt(slowest / 1000) +
             " s, medians " + m + ", csv " + csv_path + ", " + fmt(secs, 1) + " s total");
  return rows;
}

void criterion_termination(const std::vector<DifferentialRun>& runs,
                           const std::vector<cli::BenchRow>& rows) {
  int most = 0;
  for (const auto& r : runs) most = std::max(most, r.r.steps);
  for (const auto& r : rows) most = std::max(most, r.iterations);
  report(9, "termination", most <= kMaxIterations,
         "max iterations " + std::to_string(most) + " (limit " + std::to_string(kMaxIterations) +
             ")");
}

}  // namespace
}  // namespace arbac

int main(int argc, char** argv) {
  using namespace arbac;
  std::string csv = argc > 1 ? argv[1] : "bench.csv";
  criterion_one_user();
  criterion_staff_init();
  criterion_fixture_preimage();
  auto runs = criterion_differential();
  criterion_bsr();
  criterion_properties(runs);
  criterion_analyses();
  auto rows = criterion_bench(csv);
  criterion_termination(runs, rows);
  return failures;
}
