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

#include "doctest.h"

#include "oracles.hpp"

#include "branchsim/error.hpp"
#include "branchsim/generator.hpp"
#include "branchsim/gvb.hpp"
#include "branchsim/trees.hpp"

using namespace branchsim;

namespace {

void CheckAgainstOracle(const Instance& inst) {
  const TreeSize got = gvb_opt_size(inst);
  std::vector<std::uint32_t> mult = inst.multiplicities();
  const auto want = oracle::NaiveGvb(inst.variables(), mult, inst.gap().value);
  if (want) {
    REQUIRE(got.finite());
    CHECK(got.count() == *want);
  } else {
    CHECK(got.infeasible());
  }
}

}  // namespace

TEST_CASE("optimal sizes on small examples") {
  CHECK(gvb_opt_size(Instance({Variable(1, 1)}, {1}, Gap{1})).count() == 3);
  CHECK(gvb_opt_size(Instance({Variable(1, 1), Variable(2, 2)}, {0, 0}, Gap{1})).infeasible());
  CHECK(gvb_opt_size(Instance({Variable(1, 1)}, {0}, Gap{0})).count() == 1);
  CHECK(gvb_opt_size(Instance({Variable(2, 5)}, {1}, Gap{6})).infeasible());
}

TEST_CASE("dominated root instance") {
  const Instance inst = Prop3Instance();
  CHECK(gvb_opt_size(inst).count() == 9);
  CHECK(gvb_opt_size_with_forced_root(inst, 0).count() == 9);
  CHECK(gvb_opt_size_with_forced_root(inst, 1).count() == 11);
  CHECK(gvb_opt_size_with_forced_root(inst, 2).count() == 11);
  const auto report = verify_prop3_counterexample();
  CHECK(report.passed());
  CHECK_NOTHROW(report.Ensure());
}

TEST_CASE("dominated root instance variations") {
  const Instance base = Prop3Instance();
  const auto shifted = EvaluateForcedRoots(base.with_gap(Gap{14}));
  MESSAGE("gap 14: optimal " << shifted.optimal.ToString());
  CHECK(shifted.optimal <= shifted.forced[0]);
  const Instance without({Variable(9, 9), Variable(5, 10)}, {1, 1}, Gap{15});
  CHECK(gvb_opt_size(without) >= TreeSize(Count(11)));
}

TEST_CASE("forced root preconditions") {
  const Instance inst({Variable(1, 2), Variable(2, 2)}, {1, 0}, Gap{3});
  for (std::size_t bad : {std::size_t{1}, std::size_t{7}}) {
    try {
      gvb_opt_size_with_forced_root(inst, bad);
      FAIL("expected PreconditionViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kPreconditionViolation);
    }
  }
}

TEST_CASE("multiplicity budget is capped") {
  const Instance inst({Variable(1, 2), Variable(2, 3)}, {20, 5}, Gap{3});
  try {
    gvb_opt_size(inst);
    FAIL("expected StateSpaceTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kStateSpaceTooLarge);
  }
}

TEST_CASE("memoized solver equals plain recursion") {
  Xoshiro256StarStar rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.bounded(4));
    std::vector<Variable> vars;
    Multiplicities mult;
    std::uint32_t budget = 8;
    for (int i = 0; i < n; ++i) {
      vars.emplace_back(rng.uniform(1, 6), rng.uniform(1, 9));
      const auto m = static_cast<std::uint32_t>(rng.bounded(std::min<std::uint32_t>(budget, 4) + 1));
      mult.push_back(m);
      budget -= m;
    }
    const Instance inst(vars, mult, Gap{rng.uniform(0, 30)});
    CheckAgainstOracle(inst);
  }
}

TEST_CASE("optimum is no worse than any forced root") {
  Xoshiro256StarStar rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Variable> vars;
    Multiplicities mult;
    for (int i = 0; i < 4; ++i) {
      vars.emplace_back(rng.uniform(1, 8), rng.uniform(1, 12));
      mult.push_back(static_cast<std::uint32_t>(1 + rng.bounded(2)));
    }
    const Instance inst(vars, mult, Gap{rng.uniform(1, 30)});
    const TreeSize opt = gvb_opt_size(inst);
    TreeSize best = TreeSize::Infeasible();
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const TreeSize forced = gvb_opt_size_with_forced_root(inst, i);
      CHECK(opt <= forced);
      if (forced < best) best = forced;
    }
    CHECK(opt == best);
  }
}

TEST_CASE("large multiplicities reproduce the unlimited model") {
  const std::vector<std::vector<Variable>> sets = {
      {Variable(5, 7), Variable(6, 6)},
      {Variable(6, 9), Variable(7, 7)},
      {Variable(8, 9), Variable(10, 10), Variable(9, 12)},
  };
  for (const auto& vars : sets) {
    // Any path uses at most ceil(60 / min l) branchings in total.
    Gain min_l = vars[0].l();
    for (const auto& v : vars) min_l = std::min(min_l, v.l());
    const auto depth = static_cast<std::uint32_t>((60 + min_l - 1) / min_l);
    const std::uint32_t per = depth;
    REQUIRE(per * vars.size() <= kMaxMultiplicityBudget);
    const MvbTable table(vars, Gap{60});
    for (int g = 0; g <= 60; ++g) {
      const Instance inst(vars, Multiplicities(vars.size(), per), Gap{g});
      CHECK(gvb_opt_size(inst) == table.size(g));
    }
  }
}
