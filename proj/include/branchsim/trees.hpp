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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "branchsim/core.hpp"
#include "branchsim/tree_size.hpp"

namespace branchsim {

// Exact single-variable tree sizes t(0..max_gap). Lookups below zero
// return the leaf size.
class SvbTable {
 public:
  // Throws NegativeGap, or Overflow when a size needs more than 512 bits.
  SvbTable(const Variable& v, Gap max_gap);

  const Variable& variable() const { return variable_; }
  std::int64_t max_gap() const {
    return static_cast<std::int64_t>(sizes_.size()) - 1;
  }
  const TreeSize& operator[](std::int64_t gap) const;

 private:
  Variable variable_;
  std::vector<TreeSize> sizes_;
};

TreeSize svb_size(const Variable& v, Gap gap);

// ln t(anchor) + (gap - anchor) ln phi. Requires 0 <= anchor <= gap.
double svb_log_size(const Variable& v, Gap gap, Gap anchor);

// Minimum multi-variable tree sizes and the lowest-index variable that
// attains each minimum at the root.
class MvbTable {
 public:
  MvbTable(std::span<const Variable> vars, Gap max_gap);

  std::int64_t max_gap() const {
    return static_cast<std::int64_t>(sizes_.size()) - 1;
  }
  const TreeSize& size(std::int64_t gap) const;
  // Root choice for gap >= 1; nullopt at gap 0 (the root is a leaf).
  std::optional<std::size_t> choice(std::int64_t gap) const;

 private:
  std::vector<TreeSize> sizes_;
  std::vector<std::size_t> choice_;
};

struct MvbResult {
  TreeSize size = TreeSize::Leaf();
  std::optional<std::size_t> root_choice;
};

MvbResult mvb_size(std::span<const Variable> vars, Gap gap);

// Smallest single-variable ratio, which is the growth rate of the MVB tree.
double mvb_ratio(std::span<const Variable> vars);

// Exact closed form for the instance {(2,4), (3,3)}, piecewise in G mod 6.
TreeSize mvb_closed_form(Gap gap);

struct MvbGapCheck {
  std::int64_t gap = 0;
  TreeSize dp = TreeSize::Leaf();
  TreeSize closed_form = TreeSize::Leaf();
  bool matches = false;
  // Only set for gaps 2 + 6k >= 8.
  bool witness_gap = false;
  TreeSize via_24 = TreeSize::Leaf();  // 1 + t(G-2) + t(G-4)
  TreeSize via_33 = TreeSize::Leaf();  // 1 + 2 t(G-3)
  bool strictly_smaller = false;
};

struct MvbCounterexampleReport {
  std::vector<MvbGapCheck> gaps;
  std::size_t witness_gaps = 0;

  bool passed() const;
  // First gap whose closed form or strict inequality fails.
  std::optional<std::int64_t> first_failure() const;
  // Throws VerificationFailed naming first_failure().
  void Ensure() const;
};

using ClosedForm = std::function<TreeSize(Gap)>;

// Checks DP == closed form for every G <= max_gap, and that branching on
// (2,4) at the root strictly beats (3,3) at every G = 2 + 6k >= 8.
// Throws PreconditionViolation when max_gap < 8.
MvbCounterexampleReport verify_mvb_counterexample(
    Gap max_gap, const ClosedForm& closed_form = mvb_closed_form);

}  // namespace branchsim
