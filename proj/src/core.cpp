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

#include "branchsim/core.hpp"

#include <string>
#include <utility>

namespace branchsim {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPositiveGain: return "NonPositiveGain";
    case ErrorCode::kNegativeGap: return "NegativeGap";
    case ErrorCode::kEmptyInstance: return "EmptyInstance";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kPreconditionViolation: return "PreconditionViolation";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kStateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::kStateExplosion: return "StateExplosion";
    case ErrorCode::kRuleViolation: return "RuleViolation";
    case ErrorCode::kVerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ToString(code)) + ": " + message),
      code_(code) {}

bool IsNumericFailure(ErrorCode code) {
  return code == ErrorCode::kOverflow || code == ErrorCode::kNoConvergence ||
         code == ErrorCode::kDomainError;
}

Variable::Variable(Gain a, Gain b) {
  if (a < 1 || b < 1) {
    throw Error(ErrorCode::kNonPositiveGain,
                "gains must be >= 1, got (" + std::to_string(a) + ", " +
                    std::to_string(b) + ")");
  }
  if (a > b) std::swap(a, b);
  l_ = a;
  r_ = b;
}

Instance::Instance(std::vector<Variable> variables,
                   Multiplicities multiplicities, Gap gap)
    : variables_(std::move(variables)),
      multiplicities_(std::move(multiplicities)),
      gap_(gap) {
  if (variables_.empty()) {
    throw Error(ErrorCode::kEmptyInstance, "instance has no variables");
  }
  if (gap_.value < 0) {
    throw Error(ErrorCode::kNegativeGap,
                "gap must be >= 0, got " + std::to_string(gap_.value));
  }
  if (multiplicities_.size() != variables_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "multiplicity vector length does not match variable count");
  }
}

Instance Instance::with_gap(Gap gap) const {
  return Instance(variables_, multiplicities_, gap);
}

Instance validate_instance(std::span<const RawVariable> raw,
                           std::int64_t gap) {
  if (raw.empty()) {
    throw Error(ErrorCode::kEmptyInstance, "instance has no variables");
  }
  if (gap < 0) {
    throw Error(ErrorCode::kNegativeGap,
                "gap must be >= 0, got " + std::to_string(gap));
  }
  std::vector<Variable> vars;
  Multiplicities mult;
  vars.reserve(raw.size());
  mult.reserve(raw.size());
  for (const RawVariable& row : raw) {
    vars.emplace_back(row.l, row.r);
    if (row.multiplicity < 0 || row.multiplicity > UINT32_MAX) {
      throw Error(ErrorCode::kInvalidArgument,
                  "multiplicity out of range: " +
                      std::to_string(row.multiplicity));
    }
    mult.push_back(static_cast<std::uint32_t>(row.multiplicity));
  }
  return Instance(std::move(vars), std::move(mult), Gap{gap});
}

}  // namespace branchsim
