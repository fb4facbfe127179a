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

#include "branchsim/gvb.hpp"

#include <limits>
#include <numeric>
#include <unordered_map>

namespace branchsim {
namespace {

constexpr std::uint64_t kInfeasible = std::numeric_limits<std::uint64_t>::max();

// Remaining multiplicities are packed in mixed radix (m_i + 1); with every
// m_i = 1 this is exactly a bitmask of still-available variables.
class GvbSolver {
 public:
  explicit GvbSolver(const Instance& inst)
      : vars_(inst.variables()), gap_(inst.gap().value) {
    const auto& m = inst.multiplicities();
    const std::uint64_t budget =
        std::accumulate(m.begin(), m.end(), std::uint64_t{0});
    if (budget > kMaxMultiplicityBudget) {
      throw Error(ErrorCode::kStateSpaceTooLarge,
                  "sum of multiplicities " + std::to_string(budget) +
                      " exceeds " + std::to_string(kMaxMultiplicityBudget));
    }
    stride_.resize(vars_.size());
    std::uint64_t stride = 1;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      stride_[i] = stride;
      initial_ += stride * m[i];
      radix_.push_back(m[i] + 1);
      stride *= m[i] + 1;
    }
  }

  std::uint64_t initial_state() const { return initial_; }

  std::uint32_t remaining(std::uint64_t state, std::size_t i) const {
    return static_cast<std::uint32_t>((state / stride_[i]) % radix_[i]);
  }

  std::uint64_t Solve(std::int64_t gap, std::uint64_t state) {
    if (gap <= 0) return 1;
    if (state == 0) return kInfeasible;
    const std::uint64_t key =
        state * static_cast<std::uint64_t>(gap_ + 1) + static_cast<std::uint64_t>(gap);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t best = kInfeasible;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (remaining(state, i) == 0) continue;
      best = std::min(best, BranchOn(gap, state, i));
    }
    memo_.emplace(key, best);
    return best;
  }

  std::uint64_t BranchOn(std::int64_t gap, std::uint64_t state, std::size_t i) {
    const std::uint64_t child = state - stride_[i];
    const std::uint64_t left = Solve(gap - vars_[i].l(), child);
    if (left == kInfeasible) return kInfeasible;
    const std::uint64_t right = Solve(gap - vars_[i].r(), child);
    if (right == kInfeasible) return kInfeasible;
    return 1 + left + right;
  }

 private:
  std::vector<Variable> vars_;
  std::int64_t gap_;
  std::vector<std::uint64_t> stride_;
  std::vector<std::uint64_t> radix_;
  std::uint64_t initial_ = 0;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

TreeSize ToTreeSize(std::uint64_t size) {
  if (size == kInfeasible) return TreeSize::Infeasible();
  return TreeSize(Count(size));
}

}  // namespace

TreeSize gvb_opt_size(const Instance& inst) {
  GvbSolver solver(inst);
  return ToTreeSize(solver.Solve(inst.gap().value, solver.initial_state()));
}

TreeSize gvb_opt_size_with_forced_root(const Instance& inst,
                                       std::size_t root_var) {
  if (root_var >= inst.size() || inst.multiplicities()[root_var] == 0) {
    throw Error(ErrorCode::kPreconditionViolation,
                "forced root must be a variable with multiplicity >= 1");
  }
  GvbSolver solver(inst);
  if (inst.gap().closed()) return TreeSize::Leaf();
  return ToTreeSize(
      solver.BranchOn(inst.gap().value, solver.initial_state(), root_var));
}

void Prop3Report::Ensure() const {
  if (passed()) return;
  std::string message = failures.front();
  for (std::size_t i = 1; i < failures.size(); ++i) message += "; " + failures[i];
  throw Error(ErrorCode::kVerificationFailed, message);
}

Instance Prop3Instance() {
  return Instance({Variable(5, 6), Variable(9, 9), Variable(5, 10)}, {1, 1, 1},
                  Gap{15});
}

Prop3Report EvaluateForcedRoots(const Instance& inst) {
  Prop3Report report;
  report.optimal = gvb_opt_size(inst);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    report.forced.push_back(inst.multiplicities()[i] > 0
                                ? gvb_opt_size_with_forced_root(inst, i)
                                : TreeSize::Infeasible());
  }
  return report;
}

Prop3Report verify_prop3_counterexample() {
  Prop3Report report = EvaluateForcedRoots(Prop3Instance());
  const TreeSize nine(Count(9));
  const TreeSize eleven(Count(11));
  if (report.optimal != nine) {
    report.failures.push_back("optimal size is " + report.optimal.ToString() +
                              ", expected 9");
  }
  if (report.forced[0] != nine) {
    report.failures.push_back("root (5,6) gives " + report.forced[0].ToString() +
                              ", expected 9");
  }
  if (report.forced[1] < eleven) {
    report.failures.push_back("root (9,9) gives " + report.forced[1].ToString() +
                              ", expected >= 11");
  }
  if (report.forced[2] < eleven) {
    report.failures.push_back("root (5,10) gives " + report.forced[2].ToString() +
                              ", expected >= 11");
  }
  return report;
}

}  // namespace branchsim
