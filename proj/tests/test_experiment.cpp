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

#include <cmath>
#include <sstream>

#include "doctest.h"

#include "branchsim/error.hpp"
#include "branchsim/experiment.hpp"
#include "branchsim/frontier.hpp"
#include "branchsim/simulate.hpp"

using namespace branchsim;

namespace {

ExperimentConfig SmallConfig(Category c) {
  ExperimentConfig config;
  config.category = c;
  config.n_vars = 14;
  config.gaps = {300, 700};
  config.n_instances = 12;
  config.seed = 77;
  return config;
}

bool SameOutcomes(const std::vector<InstanceOutcome>& a, const std::vector<InstanceOutcome>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].category != b[i].category || a[i].gap != b[i].gap || a[i].seed != b[i].seed ||
        a[i].instance_id != b[i].instance_id || a[i].rule != b[i].rule ||
        a[i].status != b[i].status || !(a[i].size == b[i].size)) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("parallel runs reproduce the serial reference") {
  for (Category c : AllCategories()) {
    const ExperimentConfig config = SmallConfig(c);
    const ExperimentResult serial = run_experiment_serial(config);
    for (int jobs : {1, 2, 4}) {
      const ExperimentResult par = run_experiment(config, jobs);
      CHECK(SameOutcomes(serial.outcomes, par.outcomes));
      REQUIRE(par.rows.size() == serial.rows.size());
      for (std::size_t i = 0; i < par.rows.size(); ++i) {
        CHECK(par.rows[i].relative_percent == serial.rows[i].relative_percent);
        CHECK(par.rows[i].included == serial.rows[i].included);
      }
    }
  }
}

TEST_CASE("rows are ratios of geometric means against product") {
  const ExperimentConfig config = SmallConfig(Category::kVeryUnbalanced);
  const ExperimentResult result = run_experiment_serial(config);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.outcomes.size() == 2 * 12 * 3);
  for (std::size_t gi = 0; gi < 2; ++gi) {
    const ExperimentRow& row = result.rows[gi];
    CHECK(row.rules == std::vector<RuleKind>{RuleKind::kProduct, RuleKind::kRatio, RuleKind::kSvts});
    CHECK(row.relative_percent[0] == 0.0);
    CHECK(row.included + row.excluded == 12);
    double logs[3] = {0, 0, 0};
    int included = 0;
    for (int k = 0; k < 12; ++k) {
      const InstanceOutcome* o = &result.outcomes[(gi * 12 + static_cast<std::size_t>(k)) * 3];
      if (o[0].status != OutcomeStatus::kOk || o[1].status != OutcomeStatus::kOk ||
          o[2].status != OutcomeStatus::kOk) continue;
      ++included;
      for (int r = 0; r < 3; ++r) logs[r] += std::log(static_cast<double>(o[r].size.count()));
    }
    CHECK(included == row.included);
    for (int r = 1; r < 3; ++r) {
      const double want = 100.0 * (std::exp((logs[r] - logs[0]) / included) - 1.0);
      CHECK(row.relative_percent[static_cast<std::size_t>(r)] == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("outcomes match direct simulation") {
  const ExperimentConfig config = SmallConfig(Category::kUnbalanced);
  const ExperimentResult result = run_experiment_serial(config);
  for (const InstanceOutcome& o : result.outcomes) {
    const Instance inst = ExperimentInstance(config, o.instance_id, o.gap);
    SelectionRule rule(o.rule);
    CHECK(simulate_tree_size(inst, rule) == o.size);
  }
}

TEST_CASE("product-only runs are all zero") {
  ExperimentConfig config = SmallConfig(Category::kBalanced);
  config.rules = {RuleKind::kProduct};
  const ExperimentResult result = run_experiment(config, 2);
  for (const auto& row : result.rows) {
    CHECK(row.rules.size() == 1);
    CHECK(row.relative_percent == std::vector<double>{0.0});
  }
}

TEST_CASE("infeasible instances are excluded and counted") {
  ExperimentConfig config;
  config.category = Category::kExtremelyUnbalanced;
  config.n_vars = 3;
  config.gaps = {10, 100000};
  config.n_instances = 20;
  const ExperimentResult result = run_experiment_serial(config);
  CHECK(result.rows[1].included == 0);
  CHECK(result.rows[1].excluded == 20);
  CHECK(result.rows[1].relative_percent == std::vector<double>{0.0, 0.0, 0.0});
  for (const auto& o : result.outcomes) {
    if (o.gap == 100000) CHECK(o.status == OutcomeStatus::kInfeasible);
  }
  CHECK(result.rows[0].excluded == 0);
}

TEST_CASE("simulated sizes respect the depth bound") {
  // Each path uses every variable at most once, so depth <= n.
  ExperimentConfig config;
  config.category = Category::kExtremelyUnbalanced;
  config.n_vars = 16;
  config.gaps = {400, 900};
  config.n_instances = 10;
  const ExperimentResult result = run_experiment_serial(config);
  for (const auto& o : result.outcomes) {
    if (o.status == OutcomeStatus::kOk) CHECK(o.size.count() < (Count(1) << 17));
  }
}

TEST_CASE("configuration validation") {
  ExperimentConfig config = SmallConfig(Category::kBalanced);
  config.n_vars = 65;
  CHECK_THROWS_AS(run_experiment(config), Error);
  config = SmallConfig(Category::kBalanced);
  config.gaps = {};
  CHECK_THROWS_AS(run_experiment_serial(config), Error);
  config.gaps = {0};
  CHECK_THROWS_AS(run_experiment_serial(config), Error);
  config.gaps = {10};
  config.n_instances = 0;
  CHECK_THROWS_AS(run_experiment_serial(config), Error);
}

TEST_CASE("outcome CSV round-trips") {
  ExperimentConfig config = SmallConfig(Category::kExtremelyUnbalanced);
  config.gaps = {200, 3000};
  config.n_vars = 8;
  const ExperimentResult result = run_experiment(config, 2);
  std::stringstream csv;
  WriteOutcomesCsv(csv, result.outcomes);
  const std::string text = csv.str();
  CHECK(text.rfind("category,gap,seed,instance_id,rule,tree_size,status\n", 0) == 0);
  std::istringstream in(text);
  const auto back = ReadOutcomesCsv(in);
  CHECK(SameOutcomes(back, result.outcomes));
  std::stringstream again;
  WriteOutcomesCsv(again, back);
  CHECK(again.str() == text);
  std::istringstream bad("category,gap\nx\n");
  CHECK_THROWS_AS(ReadOutcomesCsv(bad), Error);
  std::istringstream bad_row(
      "category,gap,seed,instance_id,rule,tree_size,status\nbalanced,1,1,0,product,4,ok\n");
  CHECK_THROWS_AS(ReadOutcomesCsv(bad_row), Error);
}

TEST_CASE("published experiment configurations") {
  CHECK(Table9Gaps(Category::kBalanced, Table9Scale::kFull) == std::vector<std::int64_t>{5000, 9000, 12000});
  CHECK(Table9Gaps(Category::kUnbalanced, Table9Scale::kFull) == std::vector<std::int64_t>{4000, 7000, 9000});
  CHECK(Table9Gaps(Category::kVeryUnbalanced, Table9Scale::kFull) == std::vector<std::int64_t>{3000, 5000, 6000});
  CHECK(Table9Gaps(Category::kExtremelyUnbalanced, Table9Scale::kFull) ==
        std::vector<std::int64_t>{2000, 3000, 3500});
  CHECK(Table9Gaps(Category::kExtremelyUnbalanced, Table9Scale::kDesk) ==
        std::vector<std::int64_t>{1000, 1500, 1750});
  const auto full = Table9Config(Category::kBalanced, Table9Scale::kFull, 3);
  CHECK(full.n_vars == 60);
  CHECK(full.n_instances == 3000);
  const auto desk = Table9Config(Category::kBalanced, Table9Scale::kDesk, 3);
  CHECK(desk.n_vars == 30);
  CHECK(desk.n_instances == 100);
  CHECK(ParseTable9Scale("full") == Table9Scale::kFull);
  CHECK_THROWS_AS(ParseTable9Scale("huge"), Error);
}

TEST_CASE("subset count sampling") {
  const CountSample serial = SampleNondominatedCountsSerial(12, 60, 5);
  const CountSample par = SampleNondominatedCounts(12, 60, 5, 3);
  CHECK(serial.mean == par.mean);
  CHECK(serial.stddev == par.stddev);
  CHECK(serial.expected == doctest::Approx(expected_nondominated_count(12)));
  CHECK(serial.std_error == doctest::Approx(serial.stddev / std::sqrt(60.0)));
  // Frontier enumeration path above 20 variables.
  const CountSample big = SampleNondominatedCounts(22, 5, 5, 2);
  CHECK(big.mean > 0);
  CHECK(big.mean == SampleNondominatedCountsSerial(22, 5, 5).mean);
}
