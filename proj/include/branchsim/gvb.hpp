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
#include <optional>
#include <string>
#include <vector>

#include "branchsim/core.hpp"
#include "branchsim/tree_size.hpp"

namespace branchsim {

// Largest total multiplicity the exact solver accepts. The state space is
// the product of (m_i + 1), at most 2^24 under this cap.
inline constexpr std::uint64_t kMaxMultiplicityBudget = 24;

// Minimum tree size over every branching strategy that respects the
// multiplicities, dominated-first strategies included.
// Throws StateSpaceTooLarge when sum(m) exceeds the budget.
TreeSize gvb_opt_size(const Instance& inst);

// Same, conditioned on branching root_var at the root. Throws
// PreconditionViolation if root_var is out of range or has m = 0.
TreeSize gvb_opt_size_with_forced_root(const Instance& inst,
                                       std::size_t root_var);

struct Prop3Report {
  TreeSize optimal = TreeSize::Leaf();
  // Forced-root sizes in instance order: (5,6), (9,9), (5,10).
  std::vector<TreeSize> forced;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
  void Ensure() const;
};

// The instance {(5,6), (9,9), (5,10)}, all multiplicity 1, gap 15.
Instance Prop3Instance();

// Optimal size and every forced-root size for an arbitrary instance.
Prop3Report EvaluateForcedRoots(const Instance& inst);

// Checks that the optimum (9 nodes) branches on the dominated (5,6) while
// (9,9) and (5,10) at the root both need at least 11 nodes.
Prop3Report verify_prop3_counterexample();

}  // namespace branchsim
