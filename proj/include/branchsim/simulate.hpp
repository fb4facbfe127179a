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

#include "branchsim/core.hpp"
#include "branchsim/frontier.hpp"
#include "branchsim/scoring.hpp"
#include "branchsim/tree_size.hpp"

namespace branchsim {

struct SimOptions {
  // Memoize on the full unused set instead of the frontier. Gives the same
  // sizes for dominance-respecting rules; kept to check that claim.
  bool key_on_unused = false;
};

struct SimStats {
  std::uint64_t memo_states = 0;
  std::uint64_t select_calls = 0;
};

// Size of the tree built by always branching on the rule's choice among
// the current frontier. Requires every multiplicity to be 1 and at most 64
// variables (InvalidArgument otherwise). Infeasible when some path runs
// out of variables before closing the gap. Throws RuleViolation if the
// rule picks a variable outside the frontier.
TreeSize simulate_tree_size(const Instance& inst, SelectionRule& rule,
                            const SimOptions& options = {},
                            SimStats* stats = nullptr);

}  // namespace branchsim
