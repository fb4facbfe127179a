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

#include "branchsim/frontier.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

namespace branchsim {

FrontierSpace::FrontierSpace(std::span<const Variable> vars)
    : vars_(vars.begin(), vars.end()) {
  if (vars_.size() > kMaxSimVariables) {
    throw Error(ErrorCode::kInvalidArgument,
                "frontier bitmasks hold at most 64 variables, got " +
                    std::to_string(vars_.size()));
  }
  dag_ = DominanceDag(vars_);
  const std::size_t n = vars_.size();
  below_.assign(n, 0);
  reduced_preds_.assign(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (dag_.full_edge(u, v)) below_[u] |= Bit(v);
    }
    for (std::size_t p : dag_.reduced_predecessors(u)) reduced_preds_[u] |= Bit(p);
    if (dag_.indegree()[u] == 0) initial_ |= Bit(u);
  }
}

Mask FrontierSpace::Unused(Mask frontier) const {
  Mask unused = frontier;
  for (Mask rest = frontier; rest != 0; rest &= rest - 1) {
    unused |= below_[static_cast<std::size_t>(std::countr_zero(rest))];
  }
  return unused;
}

Mask FrontierSpace::Consume(Mask frontier, std::size_t i) const {
  const Mask unused = Unused(frontier) & ~Bit(i);
  Mask next = frontier & ~Bit(i);
  for (std::size_t s : dag_.reduced_successors(i)) {
    if ((reduced_preds_[s] & unused) == 0) next |= Bit(s);
  }
  return next;
}

FrontierState FrontierState::Initial(const DominanceDag& dag) {
  FrontierState state;
  state.indegree = dag.indegree();
  for (std::size_t i = 0; i < dag.size(); ++i) {
    if (state.indegree[i] == 0) state.frontier |= Bit(i);
  }
  return state;
}

void FrontierState::Consume(const DominanceDag& dag, std::size_t i) {
  if ((frontier & Bit(i)) == 0) {
    throw Error(ErrorCode::kRuleViolation,
                "variable " + std::to_string(i) + " is not in the frontier");
  }
  frontier &= ~Bit(i);
  used |= Bit(i);
  for (std::size_t s : dag.reduced_successors(i)) {
    if (--indegree[s] == 0) frontier |= Bit(s);
  }
}

std::vector<Mask> enumerate_frontiers(std::span<const Variable> vars,
                                      std::uint64_t budget) {
  const FrontierSpace space(vars);
  std::unordered_set<Mask> seen;
  std::vector<Mask> stack = {space.initial_frontier()};
  seen.insert(space.initial_frontier());
  while (!stack.empty()) {
    const Mask frontier = stack.back();
    stack.pop_back();
    for (Mask rest = frontier; rest != 0; rest &= rest - 1) {
      const Mask next =
          space.Consume(frontier, static_cast<std::size_t>(std::countr_zero(rest)));
      if (seen.insert(next).second) {
        if (seen.size() > budget) {
          throw Error(ErrorCode::kStateExplosion,
                      "more than " + std::to_string(budget) + " frontier states");
        }
        stack.push_back(next);
      }
    }
  }
  std::vector<Mask> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

double expected_nondominated_count(int n) {
  if (n < 0) {
    throw Error(ErrorCode::kInvalidArgument, "n must be >= 0");
  }
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  cpp_rational total = 0;
  cpp_int binom = 1;  // C(n, k)
  cpp_int fact = 1;   // k!
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom = binom * (n - k + 1) / k;
      fact *= k;
    }
    total += cpp_rational(binom, fact);
  }
  return total.convert_to<double>();
}

std::uint64_t count_nondominated_subsets(std::span<const Variable> vars) {
  const std::size_t n = vars.size();
  if (n > 24) {
    throw Error(ErrorCode::kInvalidArgument,
                "brute-force subset count limited to 24 variables");
  }
  std::vector<std::uint32_t> dominators(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (dominates(vars[i], vars[j])) dominators[j] |= 1u << i;
  std::uint64_t count = 0;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t subset = 0; subset < limit; ++subset) {
    bool free = true;
    for (std::uint32_t rest = subset; rest != 0 && free; rest &= rest - 1) {
      free = (dominators[std::countr_zero(rest)] & subset) == 0;
    }
    count += free ? 1 : 0;
  }
  return count;
}

}  // namespace branchsim
