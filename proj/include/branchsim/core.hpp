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

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "branchsim/error.hpp"

namespace branchsim {

using Gain = std::int64_t;

// A branching variable reduced to its two dual gains. Always stored with
// 1 <= l <= r; the constructor swaps the arguments when needed.
class Variable {
 public:
  Variable(Gain a, Gain b);

  constexpr Gain l() const { return l_; }
  constexpr Gain r() const { return r_; }

  friend auto operator<=>(const Variable&, const Variable&) = default;

 private:
  Gain l_;
  Gain r_;
};

// Remaining dual gap. Values <= 0 mean the node is a leaf.
struct Gap {
  std::int64_t value = 0;

  constexpr bool closed() const { return value <= 0; }
  friend constexpr auto operator<=>(const Gap&, const Gap&) = default;
};

// Maximum number of times each variable may be branched on along any
// root-to-leaf path, indexed like the instance's variables.
using Multiplicities = std::vector<std::uint32_t>;

// One unvalidated input row.
struct RawVariable {
  Gain l = 0;
  Gain r = 0;
  std::int64_t multiplicity = 1;
};

class Instance {
 public:
  // Throws EmptyInstance, NegativeGap or InvalidArgument (length mismatch).
  Instance(std::vector<Variable> variables, Multiplicities multiplicities,
           Gap gap);

  const std::vector<Variable>& variables() const { return variables_; }
  const Multiplicities& multiplicities() const { return multiplicities_; }
  Gap gap() const { return gap_; }
  std::size_t size() const { return variables_.size(); }

  Instance with_gap(Gap gap) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Variable> variables_;
  Multiplicities multiplicities_;
  Gap gap_;
};

// Canonicalizes and checks raw rows. Variable order is preserved.
Instance validate_instance(std::span<const RawVariable> raw, std::int64_t gap);

// Strict componentwise dominance: a >= b in both gains, > in at least one.
constexpr bool dominates(const Variable& a, const Variable& b) {
  return a.l() >= b.l() && a.r() >= b.r() && (a.l() > b.l() || a.r() > b.r());
}

}  // namespace branchsim
