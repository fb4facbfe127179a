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

#include <algorithm>
#include <bit>
#include <set>

#include "doctest.h"

#include "oracles.hpp"

#include "branchsim/error.hpp"
#include "branchsim/frontier.hpp"
#include "branchsim/generator.hpp"
#include "branchsim/simulate.hpp"
#include "branchsim/trees.hpp"

using namespace branchsim;

namespace {

constexpr RuleKind kRules[] = {RuleKind::kProduct, RuleKind::kRatio, RuleKind::kSvts};

Instance Unit(std::vector<Variable> vars, std::int64_t gap) {
  const std::size_t n = vars.size();
  return Instance(std::move(vars), Multiplicities(n, 1), Gap{gap});
}

std::vector<Variable> SmallGainVariables(Xoshiro256StarStar& rng, int n, Gain hi) {
  std::vector<Variable> vars;
  for (int i = 0; i < n; ++i) vars.emplace_back(rng.uniform(1, hi), rng.uniform(1, hi));
  return vars;
}

// Minimal elements of `unused` computed from pairwise dominance.
Mask MinimalOf(const std::vector<Variable>& vars, Mask unused) {
  Mask out = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!(unused >> i & 1)) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      if ((unused >> j & 1) && dominates(vars[j], vars[i])) dominated = true;
    }
    if (!dominated) out |= Bit(i);
  }
  return out;
}

}  // namespace

TEST_CASE("simulation examples") {
  SelectionRule product(RuleKind::kProduct);
  CHECK(simulate_tree_size(Unit({Variable(2, 5)}, 2), product).count() == 3);
  CHECK(simulate_tree_size(Unit({Variable(2, 5)}, 6), product).infeasible());
  CHECK(simulate_tree_size(Unit({Variable(5, 6), Variable(9, 9), Variable(5, 10)}, 15), product)
            .count() == 11);
  for (RuleKind k : kRules) {
    SelectionRule rule(k);
    CHECK(simulate_tree_size(Unit({Variable(3, 4), Variable(1, 8)}, 0), rule).count() == 1);
  }
}

TEST_CASE("simulation preconditions") {
  SelectionRule rule(RuleKind::kProduct);
  try {
    simulate_tree_size(Instance({Variable(1, 2)}, {2}, Gap{3}), rule);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
  try {
    simulate_tree_size(Unit(std::vector<Variable>(65, Variable(1, 1)), 3), rule);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("frontier simulation equals the naive simulator") {
  Xoshiro256StarStar rng(31337);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng.bounded(10));
    const auto vars = SmallGainVariables(rng, n, trial % 2 ? 6 : 40);
    std::int64_t sum_l = 0;
    for (const auto& v : vars) sum_l += v.l();
    const std::int64_t gap = rng.uniform(1, sum_l + 3);
    for (RuleKind k : kRules) {
      SelectionRule rule(k);
      const TreeSize got = simulate_tree_size(Unit(vars, gap), rule);
      SelectionRule naive_rule(k);
      oracle::NaiveSimulator naive(vars, naive_rule);
      CHECK(oracle::SameSize(got, naive.Size(gap)));
      SelectionRule again(k);
      CHECK(simulate_tree_size(Unit(vars, gap), again, SimOptions{true}) == got);
      // Feasibility does not depend on the rule.
      CHECK(got.finite() == (sum_l >= gap));
    }
  }
}

TEST_CASE("single variable matches the single-variable tree when feasible") {
  for (int l = 1; l <= 6; ++l) {
    for (int r = l; r <= 8; ++r) {
      for (int g = 0; g <= 12; ++g) {
        SelectionRule rule(RuleKind::kSvts);
        const TreeSize sim = simulate_tree_size(Unit({Variable(l, r)}, g), rule);
        if (sim.finite()) CHECK(sim == svb_size(Variable(l, r), Gap{g}));
        CHECK(sim.finite() == (g <= l));
      }
    }
  }
}

TEST_CASE("simulation statistics") {
  const auto vars = generate_variables(Category::kVeryUnbalanced, 20, 3);
  SelectionRule rule(RuleKind::kSvts);
  SimStats stats;
  const TreeSize size = simulate_tree_size(Unit(vars, 1500), rule, {}, &stats);
  CHECK(size.finite());
  CHECK(stats.memo_states > 0);
  CHECK(stats.select_calls == stats.memo_states);
  CHECK(stats.memo_states <= enumerate_frontiers(vars).size() * 1501);
}

TEST_CASE("frontier enumeration examples") {
  const std::vector<Variable> chain = {Variable(1, 1), Variable(2, 2), Variable(3, 3)};
  const std::vector<Variable> anti = {Variable(1, 3), Variable(2, 2), Variable(3, 1)};
  CHECK(enumerate_frontiers(chain) == std::vector<Mask>{0, 1, 2, 4});
  CHECK(enumerate_frontiers(anti).size() == 8);
  CHECK(enumerate_frontiers(std::vector<Variable>{}) == std::vector<Mask>{0});
  CHECK(count_nondominated_subsets(chain) == 4);
  CHECK(count_nondominated_subsets(anti) == 8);
  CHECK(count_nondominated_subsets(std::vector<Variable>{Variable(2, 3)}) == 2);
  try {
    enumerate_frontiers(generate_unique_coordinate_variables(30, 1), 10);
    FAIL("expected StateExplosion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kStateExplosion);
  }
}

TEST_CASE("every dominance-free subset is a reachable frontier") {
  Xoshiro256StarStar rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng.bounded(15));
    const auto vars = trial % 3 == 0 ? generate_unique_coordinate_variables(n, rng.next())
                                     : SmallGainVariables(rng, n, trial % 2 ? 5 : 100);
    const auto frontiers = enumerate_frontiers(vars);
    const std::uint64_t expected = oracle::CountAntichains(vars);
    CHECK(frontiers.size() == expected);
    CHECK(count_nondominated_subsets(vars) == expected);
    CHECK(std::is_sorted(frontiers.begin(), frontiers.end()));
  }
}

TEST_CASE("frontier updates keep their invariants") {
  Xoshiro256StarStar rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.bounded(64));
    const auto vars = trial % 2 ? generate_variables(Category::kBalanced, n, rng.next())
                                : SmallGainVariables(rng, n, 6);
    const FrontierSpace space(vars);
    FrontierState kahn = FrontierState::Initial(space.dag());
    Mask frontier = space.initial_frontier();
    Mask used = 0;
    const Mask all = n == 64 ? ~Mask{0} : Bit(static_cast<std::size_t>(n)) - 1;
    CHECK(frontier == MinimalOf(vars, all));
    while (frontier != 0) {
      CHECK(kahn.frontier == frontier);
      CHECK(space.Unused(frontier) == (all & ~used));
      CHECK(frontier == MinimalOf(vars, all & ~used));
      // Pick a random frontier member.
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (frontier >> i & 1) members.push_back(i);
      const std::size_t pick = members[rng.bounded(members.size())];
      frontier = space.Consume(frontier, pick);
      kahn.Consume(space.dag(), pick);
      used |= Bit(pick);
      CHECK(kahn.used == used);
      // Used stays closed under taking dominators.
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!(used >> i & 1)) continue;
        for (std::size_t j = 0; j < vars.size(); ++j)
          if (dominates(vars[j], vars[i])) CHECK((used >> j & 1));
      }
    }
    CHECK(used == all);
    try {
      kahn.Consume(space.dag(), 0);
      FAIL("expected RuleViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kRuleViolation);
    }
  }
}

TEST_CASE("expected count of dominance-free subsets") {
  CHECK(expected_nondominated_count(0) == 1.0);
  CHECK(expected_nondominated_count(2) == doctest::Approx(3.5));
  CHECK(expected_nondominated_count(3) == doctest::Approx(17.0 / 3.0));
  for (int n = 0; n <= 60; ++n) {
    const double want = static_cast<double>(oracle::ExpectedAntichains(n));
    CHECK(expected_nondominated_count(n) == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("generator ranges and determinism") {
  for (Category c : AllCategories()) {
    const CategorySpec& spec = Spec(c);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto vars = generate_variables(c, 60, seed);
      REQUIRE(vars.size() == 60);
      for (const auto& v : vars) {
        CHECK(v.l() <= v.r());
        if (c == Category::kBalanced) {
          CHECK(v.l() >= 1);
          CHECK(v.r() <= 1000);
        } else {
          CHECK(v.l() >= spec.l.lo);
          CHECK(v.l() <= spec.l.hi);
          CHECK(v.r() >= spec.r.lo);
          CHECK(v.r() <= spec.r.hi);
        }
      }
      CHECK(generate_variables(c, 60, seed) == vars);
      CHECK(generate_variables(c, 60, seed + 1) != vars);
    }
    CHECK(ParseCategory(ToString(c)) == c);
  }
  const auto ext = generate_variables(Category::kExtremelyUnbalanced, 5, 7);
  for (const auto& v : ext) {
    CHECK(v.l() <= 125);
    CHECK(v.r() >= 126);
  }
  CHECK(Spec(Category::kUnbalanced).l.hi == 500);
  CHECK(Spec(Category::kVeryUnbalanced).r.lo == 251);
  CHECK_THROWS_AS(ParseCategory("tiny"), Error);
  const Instance inst = generate_instance(Category::kBalanced, 60, 42, Gap{9});
  CHECK(inst.multiplicities() == Multiplicities(60, 1));
  CHECK(inst.gap().value == 9);
}

TEST_CASE("balanced draws cover both orientations") {
  const auto vars = generate_variables(Category::kBalanced, 2000, 1);
  std::int64_t low_r = 0;
  for (const auto& v : vars) low_r += v.r() < 500;
  // With swapping, r < 500 needs both draws below 500: about a quarter.
  CHECK(low_r > 400);
  CHECK(low_r < 600);
}

TEST_CASE("random number generation") {
  SplitMix64 sm(0);
  CHECK(sm.next() == 0xE220A8397B1DCDAFull);
  Xoshiro256StarStar a(123), b(123), c(124);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
  }
  CHECK(differs);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = a.uniform(3, 9);
    REQUIRE(v >= 3);
    REQUIRE(v <= 9);
    ++hist[static_cast<std::size_t>(v - 3)];
  }
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  std::set<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 4; ++s)
    for (std::uint64_t i = 0; i < 100; ++i) seeds.insert(DeriveSeed(1, s, i));
  CHECK(seeds.size() == 400);
}

TEST_CASE("unique-coordinate variables are rank pairs") {
  const auto vars = generate_unique_coordinate_variables(25, 9);
  std::set<Gain> ls, rs;
  for (const auto& v : vars) {
    ls.insert(v.l());
    rs.insert(v.r());
    CHECK(v.l() < v.r());
  }
  CHECK(ls.size() == 25);
  CHECK(rs.size() == 25);
  CHECK(*ls.begin() == 1);
  CHECK(*ls.rbegin() == 25);
  CHECK(*rs.begin() == 26);
  CHECK(*rs.rbegin() == 50);
}
