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

#include "branchsim/trees.hpp"

#include <cmath>
#include <string>

#include "branchsim/ratio.hpp"

namespace branchsim {
namespace {

void RequireNonNegative(Gap gap) {
  if (gap.value < 0) {
    throw Error(ErrorCode::kNegativeGap,
                "gap must be >= 0, got " + std::to_string(gap.value));
  }
}

const TreeSize& Lookup(const std::vector<TreeSize>& sizes, std::int64_t gap) {
  static const TreeSize kLeaf = TreeSize::Leaf();
  if (gap <= 0) return kLeaf;
  return sizes[static_cast<std::size_t>(gap)];
}

}  // namespace

SvbTable::SvbTable(const Variable& v, Gap max_gap) : variable_(v) {
  RequireNonNegative(max_gap);
  sizes_.reserve(static_cast<std::size_t>(max_gap.value) + 1);
  sizes_.push_back(TreeSize::Leaf());
  for (std::int64_t g = 1; g <= max_gap.value; ++g) {
    sizes_.push_back(
        Branch(Lookup(sizes_, g - v.l()), Lookup(sizes_, g - v.r())));
  }
}

const TreeSize& SvbTable::operator[](std::int64_t gap) const {
  if (gap > max_gap()) {
    throw Error(ErrorCode::kInvalidArgument, "gap beyond table");
  }
  return Lookup(sizes_, gap);
}

TreeSize svb_size(const Variable& v, Gap gap) {
  RequireNonNegative(gap);
  // Rolling window of the last r sizes.
  const std::size_t window = static_cast<std::size_t>(v.r());
  if (gap.value == 0) return TreeSize::Leaf();
  std::vector<TreeSize> ring(window + 1, TreeSize::Leaf());
  auto at = [&](std::int64_t g) -> const TreeSize& {
    static const TreeSize kLeaf = TreeSize::Leaf();
    if (g <= 0) return kLeaf;
    return ring[static_cast<std::size_t>(g) % ring.size()];
  };
  for (std::int64_t g = 1; g <= gap.value; ++g) {
    TreeSize next = Branch(at(g - v.l()), at(g - v.r()));
    ring[static_cast<std::size_t>(g) % ring.size()] = std::move(next);
  }
  return at(gap.value);
}

double svb_log_size(const Variable& v, Gap gap, Gap anchor) {
  if (anchor.value < 0 || anchor.value > gap.value) {
    throw Error(ErrorCode::kPreconditionViolation,
                "anchor must satisfy 0 <= anchor <= gap");
  }
  const double log_anchor = svb_size(v, anchor).log();
  if (anchor == gap) return log_anchor;
  return log_anchor +
         static_cast<double>(gap.value - anchor.value) * std::log(compute_phi(v).phi);
}

MvbTable::MvbTable(std::span<const Variable> vars, Gap max_gap) {
  if (vars.empty()) {
    throw Error(ErrorCode::kEmptyInstance, "MVB needs at least one variable");
  }
  RequireNonNegative(max_gap);
  sizes_.reserve(static_cast<std::size_t>(max_gap.value) + 1);
  choice_.reserve(sizes_.capacity());
  sizes_.push_back(TreeSize::Leaf());
  choice_.push_back(0);
  for (std::int64_t g = 1; g <= max_gap.value; ++g) {
    std::size_t best_index = 0;
    std::optional<TreeSize> best;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      TreeSize candidate = Branch(Lookup(sizes_, g - vars[i].l()),
                                  Lookup(sizes_, g - vars[i].r()));
      if (!best || candidate < *best) {
        best = std::move(candidate);
        best_index = i;
      }
    }
    sizes_.push_back(std::move(*best));
    choice_.push_back(best_index);
  }
}

const TreeSize& MvbTable::size(std::int64_t gap) const {
  if (gap > max_gap()) {
    throw Error(ErrorCode::kInvalidArgument, "gap beyond table");
  }
  return Lookup(sizes_, gap);
}

std::optional<std::size_t> MvbTable::choice(std::int64_t gap) const {
  if (gap <= 0) return std::nullopt;
  return choice_.at(static_cast<std::size_t>(gap));
}

MvbResult mvb_size(std::span<const Variable> vars, Gap gap) {
  MvbTable table(vars, gap);
  return MvbResult{table.size(gap.value), table.choice(gap.value)};
}

double mvb_ratio(std::span<const Variable> vars) {
  if (vars.empty()) {
    throw Error(ErrorCode::kEmptyInstance, "MVB needs at least one variable");
  }
  double best = compute_phi(vars[0]).phi;
  for (std::size_t i = 1; i < vars.size(); ++i) {
    best = std::min(best, compute_phi(vars[i]).phi);
  }
  return best;
}

TreeSize mvb_closed_form(Gap gap) {
  RequireNonNegative(gap);
  const std::int64_t k = gap.value / 6;
  try {
    Count p = 1;
    for (std::int64_t i = 0; i < k; ++i) p *= 4;
    Count numerator;
    Count factor;
    switch (gap.value % 6) {
      case 0: return TreeSize(2 * p - 1);
      case 1: numerator = 2 * p + 1; factor = 4; break;
      case 2: numerator = 5 * p + 1; factor = 2; break;
      case 3: return TreeSize(4 * p - 1);
      case 4: numerator = 8 * p + 1; factor = 2; break;
      default: numerator = 5 * p + 1; factor = 4; break;
    }
    if (numerator % 3 != 0) {
      throw Error(ErrorCode::kVerificationFailed,
                  "closed form division by 3 is inexact");
    }
    return TreeSize(factor * (numerator / 3) - 1);
  } catch (const std::overflow_error&) {
    throw Error(ErrorCode::kOverflow, "closed form exceeds 512 bits");
  }
}

bool MvbCounterexampleReport::passed() const {
  return !first_failure().has_value();
}

std::optional<std::int64_t> MvbCounterexampleReport::first_failure() const {
  for (const MvbGapCheck& check : gaps) {
    if (!check.matches || (check.witness_gap && !check.strictly_smaller)) {
      return check.gap;
    }
  }
  return std::nullopt;
}

void MvbCounterexampleReport::Ensure() const {
  if (auto gap = first_failure()) {
    throw Error(ErrorCode::kVerificationFailed,
                "MVB counterexample check failed at gap " + std::to_string(*gap));
  }
}

MvbCounterexampleReport verify_mvb_counterexample(Gap max_gap,
                                                  const ClosedForm& closed_form) {
  if (max_gap.value < 8) {
    throw Error(ErrorCode::kPreconditionViolation,
                "verification needs max gap >= 8");
  }
  const std::vector<Variable> vars = {Variable(2, 4), Variable(3, 3)};
  const MvbTable table(vars, max_gap);
  MvbCounterexampleReport report;
  report.gaps.reserve(static_cast<std::size_t>(max_gap.value) + 1);
  for (std::int64_t g = 0; g <= max_gap.value; ++g) {
    MvbGapCheck check;
    check.gap = g;
    check.dp = table.size(g);
    check.closed_form = closed_form(Gap{g});
    check.matches = check.dp == check.closed_form;
    if (g >= 8 && g % 6 == 2) {
      check.witness_gap = true;
      check.via_24 = Branch(table.size(g - 2), table.size(g - 4));
      check.via_33 = Branch(table.size(g - 3), table.size(g - 3));
      check.strictly_smaller = check.via_24 < check.via_33;
      ++report.witness_gaps;
    }
    report.gaps.push_back(std::move(check));
  }
  return report;
}

}  // namespace branchsim
