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

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace branchsim {

// Exact node counts. 512 bits covers every closed-form and DP sweep the
// library runs (the (2,4)/(3,3) sweep to G = 1000 needs ~335 bits); the
// checked backend turns overflow into an exception instead of wrapping.
using Count = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<
        512, 512, boost::multiprecision::unsigned_magnitude,
        boost::multiprecision::checked, void>>;

// Node count of a B&B tree, or Infeasible when some leaf can never close
// the gap. Finite counts are odd and >= 1.
class TreeSize {
 public:
  static TreeSize Leaf() { return TreeSize(Count(1)); }
  static TreeSize Infeasible() { return TreeSize(); }

  // Throws InvalidArgument unless count is odd and >= 1.
  explicit TreeSize(Count count);

  bool finite() const { return count_.has_value(); }
  bool infeasible() const { return !count_.has_value(); }
  // Throws PreconditionViolation on Infeasible.
  const Count& count() const;

  // Natural log of the count; +inf when infeasible.
  double log() const;
  // Decimal digits, or "infeasible".
  std::string ToString() const;

  // Infeasible compares greater than every finite size.
  friend bool operator==(const TreeSize& a, const TreeSize& b) {
    return a.count_ == b.count_;
  }
  friend bool operator<(const TreeSize& a, const TreeSize& b);
  friend bool operator<=(const TreeSize& a, const TreeSize& b) {
    return !(b < a);
  }
  friend bool operator>(const TreeSize& a, const TreeSize& b) { return b < a; }
  friend bool operator>=(const TreeSize& a, const TreeSize& b) {
    return !(a < b);
  }

 private:
  TreeSize() = default;
  std::optional<Count> count_;
};

// 1 + left + right. Infeasible is absorbing; throws Overflow past 512 bits.
TreeSize Branch(const TreeSize& left, const TreeSize& right);

// Conversions used by the fixed-width solvers.
TreeSize FromUint128(unsigned __int128 value);
std::string Uint128ToString(unsigned __int128 value);

}  // namespace branchsim
