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

#include "arbac/cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "arbac/analyses/analyses.hpp"
#include "arbac/errors.hpp"
#include "arbac/fol/print.hpp"
#include "arbac/oracle/concrete.hpp"
#include "arbac/policy/dsl.hpp"
#include "arbac/reach/bounded.hpp"

namespace arbac::cli {
namespace {

using json = nlohmann::ordered_json;

json ua_pairs(const Configuration& c) {
  json out = json::array();
  const auto& ext = c.extension(kUa);
  for (std::size_t i = 0; i < ext.size(); ++i) {
    if (!ext[i]) continue;
    auto t = c.tuple(kUa, i);
    out.push_back({c.element_name(kUserSort, t[0]), c.element_name(kRoleSort, t[1])});
  }
  return out;
}

json trace_json(const std::vector<TraceStep>& trace) {
  json out = json::array();
  for (const auto& s : trace) out.push_back({{"rule", s.label}, {"ua", ua_pairs(s.state)}});
  return out;
}

struct Common {
  std::string input;
  std::string mode = "per-transition";
  bool no_subsumption = false;
  bool no_simplify = false;
  bool strict_initial = false;
  long max_iterations = 10'000;
  double timeout_s = 0;
  long max_conflicts = 1'000'000;
  long max_clauses = 4'000'000;
  std::string smt_solver;
  bool external = false;
  bool no_timing = false;

  void attach(CLI::App* app, bool with_input = true) {
    if (with_input) app->add_option("file", input, "policy file (DSL or JSON)")->required();
    app->add_option("--mode", mode, "fixpoint test granularity")
        ->check(CLI::IsMember({"per-transition", "monolithic"}));
    app->add_flag("--no-subsumption", no_subsumption, "skip syntactic subsumption");
    app->add_flag("--no-simplify", no_simplify, "keep pre-images unsimplified");
    app->add_flag("--strict-initial", strict_initial, "conjoin constraints at the safety test");
    app->add_option("--max-iterations", max_iterations)->check(CLI::NonNegativeNumber);
    app->add_option("--timeout", timeout_s, "seconds, 0 for none")->check(CLI::NonNegativeNumber);
    app->add_option("--max-conflicts", max_conflicts)->check(CLI::NonNegativeNumber);
    app->add_option("--max-clauses", max_clauses)->check(CLI::NonNegativeNumber);
    app->add_option("--smt-solver", smt_solver, "external solver consulted on every check");
    app->add_flag("--external", external, "use $ARBAC_SMT_SOLVER or z3 from PATH");
    app->add_flag("--no-timing", no_timing, "omit wall-clock fields");
  }

  SolverOptions solver() const {
    SolverOptions s;
    s.budget.max_conflicts = max_conflicts;
    s.budget.max_clauses = max_clauses;
    s.external_solver = !smt_solver.empty() ? smt_solver : external ? default_external_solver() : "";
    return s;
  }

  ReachOptions reach() const {
    ReachOptions o;
    o.mode = mode == "monolithic" ? FixpointMode::kMonolithic : FixpointMode::kPerTransition;
    o.syntactic_subsumption = !no_subsumption;
    o.simplify = !no_simplify;
    o.strict_initial = strict_initial;
    o.max_iterations = max_iterations;
    o.timeout_s = timeout_s;
    o.solver = solver();
    return o;
  }
};

json reach_json(const SymbolicPolicy& sp, const ReachResult& r, bool timing) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["steps"] = r.steps;
  j["cubes"] = r.cubes.size();
  j["solver_calls"] = r.solver_calls;
  if (r.verdict == ReachVerdict::kInconclusive) j["reason"] = r.reason;
  json its = json::array();
  for (const auto& s : r.stats) {
    json it = {{"iteration", s.iteration}, {"frontier", s.frontier}, {"added", s.added},
               {"subsumed", s.subsumed},   {"covered", s.covered},   {"solver_calls", s.solver_calls}};
    if (timing) it["wall_ms"] = s.wall_ms;
    its.push_back(it);
  }
  j["iterations"] = its;
  if (r.fixpoint) {
    json f = json::array();
    for (const auto& c : r.fixpoint->cubes) f.push_back(to_string(*sp.signature, c));
    j["fixpoint"] = f;
  } else {
    j["fixpoint"] = nullptr;
  }
  j["trace"] = r.trace ? trace_json(*r.trace) : json(nullptr);
  if (timing) j["wall_ms"] = r.wall_ms;
  return j;
}

json header(const std::string& command, const std::string& input) {
  json j;
  j["command"] = command;
  if (!input.empty()) j["input"] = input;
  return j;
}

// Text mode prints one "key: value" line per top-level field.
bool g_text = false;

void emit(std::ostream& out, const json& j) {
  if (!g_text) {
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : j.items())
    out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

int cmd_analyze(const Common& c, std::ostream& out) {
  auto sp = compile_policy(load_policy_file(c.input));
  if (!sp.goal) throw ParseError("policy has no goal");
  ReachResult r = breach(sp, c.reach());
  json j = header("analyze", c.input);
  j["mode"] = c.mode;
  j["warnings"] = sp.warnings;
  j.update(reach_json(sp, r, !c.no_timing));
  emit(out, j);
  return r.verdict == ReachVerdict::kInconclusive ? kBudget : kOk;
}

int cmd_bounded(const Common& c, int bound, bool upto, std::ostream& out) {
  auto sp = compile_policy(load_policy_file(c.input));
  if (!sp.goal) throw ParseError("policy has no goal");
  std::vector<BoundedResult> rs =
      upto ? bounded_reach_upto(sp, *sp.goal, bound, c.solver())
           : std::vector<BoundedResult>{bounded_reach(sp, *sp.goal, bound, c.solver())};
  json j = header("bounded", c.input);
  json bs = json::array();
  for (const auto& r : rs) {
    json b = {{"bound", r.bound}, {"verdict", to_string(r.verdict)}};
    if (!c.no_timing) b["wall_ms"] = r.stats.wall_ms;
    bs.push_back(b);
  }
  j["bounds"] = bs;
  const BoundedResult& last = rs.back();
  j["verdict"] = to_string(last.verdict);
  if (last.verdict == Verdict::kSat) {
    json run = json::array();
    for (size_t i = 0; i < last.states.size(); ++i)
      run.push_back({{"rule", i ? last.labels[i - 1] : ""}, {"ua", ua_pairs(last.states[i])}});
    j["run"] = run;
  } else {
    j["run"] = nullptr;
  }
  emit(out, j);
  return last.verdict == Verdict::kTimeout ? kBudget : kOk;
}

int cmd_invariant(const Common& c, const std::string& psi_text, std::ostream& out) {
  auto sp = compile_policy(load_policy_file(c.input));
  ForallFormula psi = parse_forall(*sp.signature, psi_text);
  auto r = check_inductive_invariant(sp, psi, c.solver());
  json j = header("invariant", c.input);
  j["psi"] = to_string(*sp.signature, psi);
  j["holds"] = r.holds;
  const char* which[] = {"none", "init", "step"};
  j["failure"] = which[static_cast<int>(r.which)];
  if (!r.rule.empty()) j["rule"] = r.rule;
  j["countermodel"] = r.countermodel ? ua_pairs(*r.countermodel) : json(nullptr);
  j["successor"] = r.successor ? ua_pairs(*r.successor) : json(nullptr);
  emit(out, j);
  return kOk;
}

int cmd_contain(const Common& c, const std::string& r1, const std::string& r2,
                std::ostream& out) {
  auto r = role_containment(load_policy_file(c.input), r1, r2, c.reach());
  json j = header("contain", c.input);
  j["r1"] = r1;
  j["r2"] = r2;
  j["holds"] = r.holds;
  j["verdict"] = to_string(r.reach.verdict);
  j["witness"] = r.witness ? trace_json(*r.witness) : json(nullptr);
  emit(out, j);
  return r.reach.verdict == ReachVerdict::kInconclusive ? kBudget : kOk;
}

int cmd_wp(const Common& c, const std::string& user, std::ostream& out) {
  auto r = weakest_precondition(load_policy_file(c.input), user, c.reach());
  json j = header("wp", c.input);
  j["user"] = user;
  j["search"] = to_string(r.search);
  j["minimal_sets"] = r.minimal_sets;
  j["nodes"] = r.nodes;
  j["candidates"] = r.candidates;
  emit(out, j);
  return r.search == ReachVerdict::kInconclusive ? kBudget : kOk;
}

int cmd_oracle(const std::string& input, long max_states, std::ostream& out) {
  auto inst = make_concrete(load_policy_file(input));
  if (!inst.goal) throw ParseError("policy has no goal");
  auto r = forward_reach(inst, *inst.goal, max_states);
  json j = header("oracle", input);
  j["verdict"] = r.reachable ? "reachable" : "unreachable";
  j["states"] = r.states;
  j["depth"] = r.depth;
  if (r.reachable) {
    json run = json::array();
    for (const auto& s : r.run)
      run.push_back({{"rule", s.label}, {"ua", ua_pairs(to_configuration(inst, s.state))}});
    j["run"] = run;
  } else {
    j["run"] = nullptr;
  }
  emit(out, j);
  return kOk;
}

void attach_family(CLI::App* app, GenParams& g) {
  app->add_option("--users", g.users)->check(CLI::PositiveNumber);
  app->add_option("--roles", g.roles)->check(CLI::PositiveNumber);
  app->add_option("--perms", g.perms)->check(CLI::NonNegativeNumber);
  app->add_option("--assign", g.assign_rules)->check(CLI::NonNegativeNumber);
  app->add_option("--revoke", g.revoke_rules)->check(CLI::NonNegativeNumber);
  app->add_option("--width", g.precondition_width, "precondition width")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--smer", g.smer_pairs)->check(CLI::NonNegativeNumber);
  app->add_option("--hierarchy", g.hierarchy_pairs)->check(CLI::NonNegativeNumber);
  app->add_option("--init-density", g.init_density)->check(CLI::Range(0.0, 1.0));
  app->add_option("--admin-prob", g.admin_prob)->check(CLI::Range(0.0, 1.0));
  app->add_option("--trusted-prob", g.trusted_prob)->check(CLI::Range(0.0, 1.0));
}

}  // namespace

std::uint64_t bench_seed(std::uint64_t base, int goal_size, int i) {
  return base * 1'000'003ULL + static_cast<std::uint64_t>(goal_size) * 10'007ULL +
         static_cast<std::uint64_t>(i);
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  std::vector<BenchRow> rows;
  for (int g : cfg.goal_sizes)
    for (int i = 0; i < cfg.instances; ++i) {
      BenchRow r;
      r.id = static_cast<int>(rows.size());
      r.goal_size = g;
      r.seed = bench_seed(cfg.seed, g, i);
      rows.push_back(r);
    }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k; (k = next++) < rows.size();) {
      BenchRow& row = rows[k];
      GenParams p = cfg.family;
      p.goal_size = row.goal_size;
      p.seed = row.seed;
      ReachOptions o;
      o.timeout_s = cfg.timeout_s;
      o.extract_trace = false;
      auto sp = compile_policy(generate_policy(p));
      auto r = breach(sp, o);
      row.verdict = r.verdict;
      row.iterations = r.steps;
      row.cubes = static_cast<long>(r.cubes.size());
      row.solver_calls = r.solver_calls;
      row.wall_ms = r.wall_ms;
    }
  };
  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "instance,goal_size,seed,verdict,iterations,cubes,solver_calls,wall_ms\n";
  for (const auto& r : rows)
    out << r.id << "," << r.goal_size << "," << r.seed << "," << to_string(r.verdict) << ","
        << r.iterations << "," << r.cubes << "," << r.solver_calls << "," << r.wall_ms << "\n";
}

std::vector<double> median_iterations(const std::vector<BenchRow>& rows,
                                      const std::vector<int>& goal_sizes) {
  std::vector<double> out;
  for (int g : goal_sizes) {
    std::vector<int> its;
    for (const auto& r : rows)
      if (r.goal_size == g) its.push_back(r.iterations);
    if (its.empty()) {
      out.push_back(0);
      continue;
    }
    std::sort(its.begin(), its.end());
    size_t n = its.size();
    out.push_back(n % 2 ? its[n / 2] : (its[n / 2 - 1] + its[n / 2]) / 2.0);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::string format = "json";
  CLI::App app{"Symbolic user-role reachability analysis for ARBAC policies", "arbac-reach"};
  app.require_subcommand(1);
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));

  Common common;
  auto* analyze = app.add_subcommand("analyze", "backward reachability of the policy goal");
  common.attach(analyze);

  Common bcommon;
  int bound = 0;
  bool upto = false;
  auto* bounded = app.add_subcommand("bounded", "bounded unfolding up to a step count");
  bcommon.attach(bounded);
  bounded->add_option("--bound", bound)->required()->check(CLI::NonNegativeNumber);
  bounded->add_flag("--upto", upto, "try every bound from 0 and stop at the first sat");

  Common icommon;
  std::string psi;
  auto* invariant = app.add_subcommand("invariant", "inductive invariant check");
  icommon.attach(invariant);
  std::string psi_file;
  auto* psi_opt = invariant->add_option("--psi", psi, "forall-formula in s-expression syntax");
  auto* psi_file_opt = invariant->add_option("--psi-file", psi_file)->check(CLI::ExistingFile);
  psi_opt->excludes(psi_file_opt);

  Common ccommon;
  std::string r1, r2;
  auto* contain = app.add_subcommand("contain", "is every member of r1 a member of r2");
  ccommon.attach(contain);
  contain->add_option("--r1", r1)->required();
  contain->add_option("--r2", r2)->required();

  Common wcommon;
  std::string user;
  auto* wp = app.add_subcommand("wp", "minimal initial memberships reaching the goal");
  wcommon.attach(wp);
  wp->add_option("--user", user)->required();

  std::string oracle_input;
  long max_states = 1L << 20;
  auto* oracle = app.add_subcommand("oracle", "explicit-state forward search");
  oracle->add_option("file", oracle_input)->required();
  oracle->add_option("--max-states", max_states)->check(CLI::PositiveNumber);

  GenParams gen_params;
  std::string gen_out;
  bool oracle_scale = false;
  auto* gen = app.add_subcommand("gen", "random policy in the DSL");
  attach_family(gen, gen_params);
  gen->add_option("--goal-size", gen_params.goal_size)->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_params.seed);
  gen->add_flag("--oracle-scale", oracle_scale, "draw sizes from the oracle-scale family");
  gen->add_option("-o,--output", gen_out);

  BenchConfig bench_cfg;
  bench_cfg.family.assign_rules = 8;
  bench_cfg.family.revoke_rules = 4;
  std::string csv_path;
  auto* bench = app.add_subcommand("bench", "scaling harness over random families");
  attach_family(bench, bench_cfg.family);
  bench->add_option("--goal-sizes", bench_cfg.goal_sizes)->delimiter(',');
  bench->add_option("--instances", bench_cfg.instances)->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_cfg.seed);
  bench->add_option("--timeout", bench_cfg.timeout_s, "per instance, seconds");
  bench->add_option("--jobs", bench_cfg.jobs)->check(CLI::PositiveNumber);
  bench->add_option("--csv", csv_path, "write rows here instead of stdout");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  g_text = format == "text";
  try {
    if (*analyze) return cmd_analyze(common, out);
    if (*bounded) return cmd_bounded(bcommon, bound, upto, out);
    if (*invariant) {
      if (psi.empty() && psi_file.empty()) {
        err << "invariant: one of --psi or --psi-file is required\n";
        return kUsage;
      }
      if (!psi_file.empty()) {
        std::ifstream f(psi_file);
        psi.assign(std::istreambuf_iterator<char>(f), {});
      }
      return cmd_invariant(icommon, psi, out);
    }
    if (*contain) return cmd_contain(ccommon, r1, r2, out);
    if (*wp) return cmd_wp(wcommon, user, out);
    if (*oracle) return cmd_oracle(oracle_input, max_states, out);
    if (*gen) {
      GenParams p = gen_params;
      if (oracle_scale) p = oracle_scale_params(gen_params.seed);
      std::string text = serialize_policy(generate_policy(p));
      if (gen_out.empty()) {
        out << text;
      } else {
        std::ofstream f(gen_out);
        if (!f) throw ParseError("cannot write " + gen_out);
        f << text;
      }
      return kOk;
    }
    if (*bench) {
      auto rows = run_bench(bench_cfg);
      auto med = median_iterations(rows, bench_cfg.goal_sizes);
      long inconclusive = std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) {
        return r.verdict == ReachVerdict::kInconclusive;
      });
      if (csv_path.empty()) {
        write_bench_csv(rows, out);
      } else {
        std::ofstream f(csv_path);
        if (!f) throw ParseError("cannot write " + csv_path);
        write_bench_csv(rows, f);
        json j = header("bench", "");
        j["csv"] = csv_path;
        j["rows"] = rows.size();
        j["inconclusive"] = inconclusive;
        json m = json::object();
        for (size_t i = 0; i < med.size(); ++i) m[std::to_string(bench_cfg.goal_sizes[i])] = med[i];
        j["median_iterations"] = m;
        emit(out, j);
      }
      return inconclusive ? kBudget : kOk;
    }
  } catch (const SolverTimeout& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const StateSpaceCap& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}

}  // namespace arbac::cli
