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

#include "branchsim/simulate.hpp"

#include <bit>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

namespace branchsim {
namespace {

using u128 = unsigned __int128;
constexpr u128 kInfeasible = ~static_cast<u128>(0);

struct StateKey {
  Mask set;
  std::int64_t gap;
  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::uint64_t h = k.set * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(k.gap) + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
    h ^= h >> 29;
    return static_cast<std::size_t>(h);
  }
};

// Sizes never exceed 2^65 - 1 (depth <= 64), so 128 bits cannot overflow.
class FrontierSimulator {
 public:
  FrontierSimulator(const Instance& inst, SelectionRule& rule,
                    const SimOptions& options)
      : space_(inst.variables()), rule_(rule), options_(options) {
    scratch_.resize(space_.size() + 1);
  }

  u128 Run(std::int64_t gap) { return Solve(space_.initial_frontier(), gap, 0); }

  SimStats stats() const {
    return SimStats{static_cast<std::uint64_t>(memo_.size()), select_calls_};
  }

 private:
  u128 Solve(Mask frontier, std::int64_t gap, std::size_t depth) {
    if (gap <= 0) return 1;
    if (frontier == 0) return kInfeasible;
    const StateKey key{options_.key_on_unused ? space_.Unused(frontier) : frontier,
                       gap};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<Candidate>& candidates = scratch_[depth];
    candidates.clear();
    for (Mask rest = frontier; rest != 0; rest &= rest - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(rest));
      candidates.push_back(Candidate{i, space_.variables()[i]});
    }
    ++select_calls_;
    const std::size_t choice = rule_.select(candidates, Gap{gap});
    if (choice >= space_.size() || (frontier & Bit(choice)) == 0) {
      throw Error(ErrorCode::kRuleViolation,
                  "rule selected variable " + std::to_string(choice) +
                      " outside the frontier");
    }
    const Variable& v = space_.variables()[choice];
    const Mask next = space_.Consume(frontier, choice);
    u128 size = kInfeasible;
    const u128 left = Solve(next, gap - v.l(), depth + 1);
    if (left != kInfeasible) {
      const u128 right = Solve(next, gap - v.r(), depth + 1);
      if (right != kInfeasible) size = 1 + left + right;
    }
    memo_.emplace(key, size);
    return size;
  }

  FrontierSpace space_;
  SelectionRule& rule_;
  SimOptions options_;
  std::vector<std::vector<Candidate>> scratch_;
  std::unordered_map<StateKey, u128, StateKeyHash> memo_;
  std::uint64_t select_calls_ = 0;
};

}  // namespace

TreeSize simulate_tree_size(const Instance& inst, SelectionRule& rule,
                            const SimOptions& options, SimStats* stats) {
  for (std::uint32_t m : inst.multiplicities()) {
    if (m != 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "the simulator requires every multiplicity to be 1");
    }
  }
  FrontierSimulator sim(inst, rule, options);
  const u128 size = sim.Run(inst.gap().value);
  if (stats) *stats = sim.stats();
  if (size == kInfeasible) return TreeSize::Infeasible();
  return FromUint128(size);
}

}  // namespace branchsim
