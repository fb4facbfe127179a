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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "branchsim/core.hpp"
#include "branchsim/dominance.hpp"

namespace branchsim {

using Mask = std::uint64_t;
inline constexpr std::size_t kMaxSimVariables = 64;
inline constexpr std::uint64_t kDefaultFrontierBudget = 100'000'000;

constexpr Mask Bit(std::size_t i) { return Mask{1} << i; }

// Precomputed bitmask view of the dominance order for at most 64
// variables. A frontier is the set of unused variables that no unused
// variable dominates; under a dominance-respecting rule the unused set is
// always the frontier plus everything it dominates, so the frontier alone
// identifies the state.
class FrontierSpace {
 public:
  // Throws InvalidArgument for more than 64 variables.
  explicit FrontierSpace(std::span<const Variable> vars);

  std::size_t size() const { return vars_.size(); }
  const std::vector<Variable>& variables() const { return vars_; }
  const DominanceDag& dag() const { return dag_; }

  Mask initial_frontier() const { return initial_; }
  // Frontier plus every variable it dominates.
  Mask Unused(Mask frontier) const;
  // Frontier after branching on i, which must be in the frontier. A
  // reduced-DAG successor joins once none of its immediate dominators is
  // still unused (one AND per successor).
  Mask Consume(Mask frontier, std::size_t i) const;

 private:
  std::vector<Variable> vars_;
  DominanceDag dag_;
  std::vector<Mask> below_;          // variables that i dominates
  std::vector<Mask> reduced_preds_;  // immediate dominators of i
  Mask initial_ = 0;
};

// Kahn-style bookkeeping over the reduced DAG: a variable enters the
// frontier when its count of unused immediate dominators reaches zero.
struct FrontierState {
  Mask frontier = 0;
  Mask used = 0;
  std::vector<std::size_t> indegree;

  static FrontierState Initial(const DominanceDag& dag);
  // Throws RuleViolation when i is not in the frontier.
  void Consume(const DominanceDag& dag, std::size_t i);
};

// Every frontier reachable from the initial one by consuming frontier
// variables one at a time, sorted ascending. Throws StateExplosion when
// more than `budget` states are found.
std::vector<Mask> enumerate_frontiers(std::span<const Variable> vars,
                                      std::uint64_t budget = kDefaultFrontierBudget);

// sum_{k=0..n} C(n,k) / k!, evaluated in exact rationals.
double expected_nondominated_count(int n);

// Brute force over all 2^n subsets. Throws InvalidArgument for n > 24.
std::uint64_t count_nondominated_subsets(std::span<const Variable> vars);

}  // namespace branchsim
