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

#ifndef ARBAC_CLI_CLI_HPP_
#define ARBAC_CLI_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "arbac/policy/generate.hpp"
#include "arbac/reach/breach.hpp"

namespace arbac::cli {

enum ExitCode { kOk = 0, kUsage = 1, kInput = 2, kBudget = 3 };

// Runs one subcommand; args excludes the program name. Reports go to out,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchRow {
  int id = 0;
  int goal_size = 0;
  std::uint64_t seed = 0;
  ReachVerdict verdict = ReachVerdict::kInconclusive;
  int iterations = 0;
  long cubes = 0;
  long solver_calls = 0;
  double wall_ms = 0;
};

struct BenchConfig {
  std::vector<int> goal_sizes{1, 2, 3, 4};
  int instances = 32;
  GenParams family;  // goal_size and seed are overwritten per instance
  std::uint64_t seed = 1;
  double timeout_s = 60;
  int jobs = 1;
};

// Seed of instance i in the family of one goal size.
std::uint64_t bench_seed(std::uint64_t base, int goal_size, int i);

// Rows ordered by goal size, then instance index, whatever the job count.
std::vector<BenchRow> run_bench(const BenchConfig& cfg);
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);
// Median iteration count per goal size, in the order of cfg.goal_sizes.
std::vector<double> median_iterations(const std::vector<BenchRow>& rows,
                                      const std::vector<int>& goal_sizes);

}  // namespace arbac::cli

#endif  // ARBAC_CLI_CLI_HPP_
