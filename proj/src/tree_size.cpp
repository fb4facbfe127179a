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

#include "branchsim/tree_size.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "branchsim/error.hpp"

namespace branchsim {

TreeSize::TreeSize(Count count) : count_(std::move(count)) {
  if (*count_ == 0 || (*count_ & 1) == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "tree sizes are odd and >= 1, got " + count_->str());
  }
}

const Count& TreeSize::count() const {
  if (!count_) {
    throw Error(ErrorCode::kPreconditionViolation,
                "count() called on an infeasible tree size");
  }
  return *count_;
}

double TreeSize::log() const {
  if (!count_) return std::numeric_limits<double>::infinity();
  // Shift large counts down so the conversion stays within double range.
  unsigned shift = 0;
  Count c = *count_;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(c));
  if (bits > 900) {
    shift = bits - 900;
    c >>= shift;
  }
  return std::log(c.convert_to<double>()) + shift * std::log(2.0);
}

std::string TreeSize::ToString() const {
  return count_ ? count_->str() : std::string("infeasible");
}

bool operator<(const TreeSize& a, const TreeSize& b) {
  if (!a.count_) return false;
  if (!b.count_) return true;
  return *a.count_ < *b.count_;
}

TreeSize Branch(const TreeSize& left, const TreeSize& right) {
  if (left.infeasible() || right.infeasible()) return TreeSize::Infeasible();
  try {
    Count total = left.count();
    total += right.count();
    total += 1;
    return TreeSize(std::move(total));
  } catch (const std::overflow_error&) {
    throw Error(ErrorCode::kOverflow, "tree size exceeds 512 bits");
  }
}

TreeSize FromUint128(unsigned __int128 value) {
  Count c = static_cast<std::uint64_t>(value >> 64);
  c <<= 64;
  c += static_cast<std::uint64_t>(value);
  return TreeSize(std::move(c));
}

std::string Uint128ToString(unsigned __int128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.insert(digits.begin(), static_cast<char>('0' + value % 10));
    value /= 10;
  }
  return digits;
}

}  // namespace branchsim
