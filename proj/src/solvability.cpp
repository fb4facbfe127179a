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

#include <numeric>
#include <vector>

#include "branchsim/ratio.hpp"

namespace branchsim {

std::string_view ToString(Solvability s) {
  switch (s) {
    case Solvability::kSolvable: return "solvable";
    case Solvability::kNotSolvable: return "not-solvable";
    case Solvability::kUnknown: return "unknown";
  }
  return "unknown";
}

bool QuadraticFactorDivides(std::int64_t k1, std::int64_t k2, int c) {
  if (k2 < 1 || k1 < k2 || k1 > 120 || (c != 1 && c != -1)) {
    throw Error(ErrorCode::kInvalidArgument, "QuadraticFactorDivides domain");
  }
  // coeffs[i] is the coefficient of x^i.
  std::vector<__int128> coeffs(static_cast<std::size_t>(k1) + 1, 0);
  coeffs[k1] += 1;
  coeffs[k1 - k2] -= 1;
  coeffs[0] -= 1;
  // Divide by x^2 - x + c: subtract lead * x^(i-2) * (x^2 - x + c).
  for (std::int64_t i = k1; i >= 2; --i) {
    const __int128 lead = coeffs[i];
    if (lead == 0) continue;
    coeffs[i] = 0;
    coeffs[i - 1] += lead;
    coeffs[i - 2] -= lead * c;
  }
  return coeffs[0] == 0 && coeffs[1] == 0;
}

SolvabilityVerdict classify_solvability(const Variable& v) {
  SolvabilityVerdict out;
  out.d = std::gcd(v.r(), v.l());
  out.k1 = v.r() / out.d;
  out.k2 = v.l() / out.d;

  if (out.k1 == out.k2) {
    out.verdict = Solvability::kSolvable;
    out.detail = "l == r: pure power x^r - 2";
    return out;
  }
  out.reducible = out.k1 % 2 == 1 && out.k2 % 2 == 1 && (out.k1 + out.k2) % 3 == 0;
  if (out.k1 <= 4) {
    out.verdict = Solvability::kSolvable;
    out.detail = "reduced degree k1 <= 4";
    return out;
  }
  if (!out.reducible) {
    out.verdict = Solvability::kNotSolvable;
    out.detail = "irreducible of degree k1 >= 5 with Galois group S_k1";
    return out;
  }
  std::string factor = "x^2 - x + 1";
  if (out.k1 <= 120 && !QuadraticFactorDivides(out.k1, out.k2, +1)) {
    factor = "unverified quadratic";
  }
  const std::int64_t cofactor_degree = out.k1 - 2;
  if (cofactor_degree <= 4) {
    out.verdict = Solvability::kSolvable;
    out.detail = "reducible: (" + factor + ") times a factor of degree " +
                 std::to_string(cofactor_degree) + " <= 4";
  } else if (out.k1 == 7 && out.k2 == 5) {
    out.verdict = Solvability::kNotSolvable;
    out.detail = "reducible: (" + factor +
                 ")(x^5 + x^4 - x^2 - x - 1), quintic with Galois group S_5";
  } else {
    out.verdict = Solvability::kUnknown;
    out.detail = "reducible: (" + factor + ") times a factor of degree " +
                 std::to_string(cofactor_degree) + "; Galois group not determined";
  }
  return out;
}

}  // namespace branchsim
