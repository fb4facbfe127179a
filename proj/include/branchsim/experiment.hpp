// Copyright 2026 The branchsim Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "branchsim/generator.hpp"
#include "branchsim/scoring.hpp"
#include "branchsim/tree_size.hpp"

namespace branchsim {

struct ExperimentConfig {
  Category category = Category::kBalanced;
  int n_vars = 60;
  std::vector<std::int64_t> gaps;
  int n_instances = 3000;
  std::uint64_t seed = 1;
  // Product is always simulated as the baseline, listed here or not.
  std::vector<RuleKind> rules = {RuleKind::kProduct, RuleKind::kRatio,
                                 RuleKind::kSvts};
  ScoringParams params;
};

// Throws InvalidArgument for n_vars outside [1, 64], non-positive gaps or
// instance counts, or an empty gap list.
void Validate(const ExperimentConfig& config);

enum class OutcomeStatus { kOk, kInfeasible, kOverflow };
std::string_view ToString(OutcomeStatus status);

struct InstanceOutcome {
  Category category = Category::kBalanced;
  std::int64_t gap = 0;
  std::uint64_t seed = 0;  // run seed
  int instance_id = 0;
  RuleKind rule = RuleKind::kProduct;
  TreeSize size = TreeSize::Infeasible();
  OutcomeStatus status = OutcomeStatus::kOk;
};

struct ExperimentRow {
  Category category = Category::kBalanced;
  std::int64_t gap = 0;
  std::vector<RuleKind> rules;
  // 100 * (geomean(rule) / geomean(product) - 1), per rule.
  std::vector<double> relative_percent;
  int included = 0;
  int excluded = 0;
};

struct ExperimentResult {
  std::vector<InstanceOutcome> outcomes;
  std::vector<ExperimentRow> rows;
};

// Instance k of a run is generate_instance(category, n_vars,
// DeriveSeed(seed, category, k)); the same instances are used at every gap.
Instance ExperimentInstance(const ExperimentConfig& config, int instance_id,
                            std::int64_t gap);

// Reference implementation: one instance after another.
ExperimentResult run_experiment_serial(const ExperimentConfig& config);

// OpenMP over (gap, instance) tasks; jobs <= 0 uses the OpenMP default.
// Output is identical to the serial version for any thread count.
ExperimentResult run_experiment(const ExperimentConfig& config, int jobs = 0);

// Rows from outcomes ordered as the runners produce them.
std::vector<ExperimentRow> Summarize(const ExperimentConfig& config,
                                     const std::vector<InstanceOutcome>& outcomes);

// Per-instance CSV with header
//   category,gap,seed,instance_id,rule,tree_size,status
// tree_size is a decimal count, or empty unless status is ok.
void WriteOutcomesCsv(std::ostream& out,
                      const std::vector<InstanceOutcome>& outcomes);
// Throws ParseError on a malformed header or row.
std::vector<InstanceOutcome> ReadOutcomesCsv(std::istream& in);
OutcomeStatus ParseOutcomeStatus(std::string_view name);

enum class Table9Scale { kDesk, kFull };
Table9Scale ParseTable9Scale(std::string_view name);

// Gap columns per category: full scale uses 60 variables, 3000 instances
// and the published gaps; desk scale uses 30 variables, 100 instances and
// half of each gap.
std::vector<std::int64_t> Table9Gaps(Category category, Table9Scale scale);
ExperimentConfig Table9Config(Category category, Table9Scale scale,
                              std::uint64_t seed);

struct CountSample {
  int n = 0;
  int trials = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
  double expected = 0.0;  // closed-form expectation for unique coordinates
};

// Number of non-dominated subsets over `trials` unique-coordinate
// instances. Brute force for n <= 20, frontier enumeration above.
CountSample SampleNondominatedCountsSerial(int n, int trials, std::uint64_t seed);
CountSample SampleNondominatedCounts(int n, int trials, std::uint64_t seed,
                                     int jobs = 0);

}  // namespace branchsim
