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
#include <unordered_map>

#include "branchsim/core.hpp"

namespace branchsim {

inline constexpr double kDefaultPhiTolerance = 1e-12;
inline constexpr int kMaxPhiIterations = 200;
// Above this scaled exponent r/l the fixed-point iteration is used.
inline constexpr double kLaguerreMaxExponent = 200.0;

enum class PhiMethod { kLaguerre, kFixedPoint, kClosedForm };

std::string_view ToString(PhiMethod method);

struct PhiResult {
  double phi = 0.0;        // root >= 1 of x^r - x^(r-l) - 1
  double phi_pow_l = 0.0;  // root of the scaled trinomial; equals phi^l
  int iterations = 0;
  PhiMethod method = PhiMethod::kLaguerre;
};

// Last converged scaled root per variable, used as a warm start. Keys are
// opaque: KeyFor() packs an (l, r) pair, callers tracking variables whose
// gains drift can key by their own variable id instead.
class PhiCache {
 public:
  using Key = std::uint64_t;

  static Key KeyFor(const Variable& v) {
    return (static_cast<Key>(v.l()) << 32) ^ static_cast<Key>(v.r());
  }

  std::optional<double> find(Key key) const;
  void store(Key key, double phi_pow_l) { entries_[key] = phi_pow_l; }
  std::size_t size() const { return entries_.size(); }
  void clear() { entries_.clear(); }

 private:
  std::unordered_map<Key, double> entries_;
};

PhiResult compute_phi(const Variable& v, double tol = kDefaultPhiTolerance);
PhiResult compute_phi(const Variable& v, PhiCache& cache,
                      double tol = kDefaultPhiTolerance);
PhiResult compute_phi(const Variable& v, PhiCache& cache, PhiCache::Key key,
                      double tol = kDefaultPhiTolerance);

struct TrinomialValue {
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
};

// x^q - x^(q-1) - 1 and its first two derivatives for real q >= 1.
// Throws DomainError unless x > 1.
TrinomialValue trinomial_residual(double x, double q);

enum class Solvability { kSolvable, kNotSolvable, kUnknown };

std::string_view ToString(Solvability s);

struct SolvabilityVerdict {
  Solvability verdict = Solvability::kUnknown;
  std::int64_t d = 1;   // gcd(r, l)
  std::int64_t k1 = 1;  // r / d
  std::int64_t k2 = 1;  // l / d
  bool reducible = false;
  std::string detail;
};

// Whether x^r - x^(r-l) - 1 is solvable by radicals, following the
// gcd reduction, the irreducibility criterion for trinomials and the S_n
// Galois group argument. Reducible cases with an irreducible factor of
// degree >= 5 other than (k1, k2) = (7, 5) are reported as Unknown.
SolvabilityVerdict classify_solvability(const Variable& v);

// Exact long division: does x^2 - x + c (c = +1 or -1) divide
// x^k1 - x^(k1-k2) - 1 over the integers? Requires 1 <= k2 <= k1 <= 120.
bool QuadraticFactorDivides(std::int64_t k1, std::int64_t k2, int c);

}  // namespace branchsim
