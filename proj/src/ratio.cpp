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

#include <algorithm>
#include <cmath>

#include "branchsim/ratio.hpp"

namespace branchsim {
namespace {

struct ScaledRoot {
  double x = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Laguerre's update with the (real) exponent q standing in for the degree,
// safeguarded by the sign bracket [lo, hi] of the scaled trinomial.
ScaledRoot Laguerre(double q, double x, double tol) {
  double lo = 1.0;
  double hi = 2.0;
  ScaledRoot out;
  for (int it = 1; it <= kMaxPhiIterations; ++it) {
    out.iterations = it;
    const TrinomialValue t = trinomial_residual(x, q);
    if (t.f == 0.0) {
      out.x = x;
      out.converged = true;
      return out;
    }
    if (t.f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double g = t.df / t.f;
    const double h = g * g - t.d2f / t.f;
    const double disc = std::max(0.0, (q - 1.0) * (q * h - g * g));
    const double sq = std::sqrt(disc);
    const double denom = std::abs(g + sq) >= std::abs(g - sq) ? g + sq : g - sq;
    double next = denom != 0.0 ? x - q / denom : 0.5 * (lo + hi);
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
    const bool done = std::abs(next - x) <= tol * next;
    x = next;
    if (done) {
      out.x = x;
      out.converged = true;
      return out;
    }
  }
  out.x = x;
  return out;
}

// x <- (1 - 1/x)^(-1/q); a contraction near the root for large q.
ScaledRoot FixedPoint(double q, double x, double tol) {
  ScaledRoot out;
  for (int it = 1; it <= kMaxPhiIterations; ++it) {
    out.iterations = it;
    const double next = std::pow(1.0 - 1.0 / x, -1.0 / q);
    const bool done = std::abs(next - x) <= tol * next;
    x = next;
    if (done) {
      out.x = x;
      out.converged = true;
      return out;
    }
  }
  out.x = x;
  return out;
}

ScaledRoot Bisect(double q, double tol) {
  double lo = 1.0;
  double hi = 2.0;
  ScaledRoot out;
  int it = 0;
  while (hi - lo > tol * hi && it < 4 * kMaxPhiIterations) {
    ++it;
    const double mid = 0.5 * (lo + hi);
    if (trinomial_residual(mid, q).f < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.x = 0.5 * (lo + hi);
  out.iterations = it;
  out.converged = hi - lo <= tol * hi;
  return out;
}

PhiResult Solve(const Variable& v, PhiCache* cache, PhiCache::Key key,
                double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  PhiResult result;
  if (v.l() == v.r()) {
    result.phi = std::pow(2.0, 1.0 / static_cast<double>(v.r()));
    result.phi_pow_l = 2.0;
    result.iterations = 0;
    result.method = PhiMethod::kClosedForm;
    if (cache) cache->store(key, result.phi_pow_l);
    return result;
  }
  const double q = static_cast<double>(v.r()) / static_cast<double>(v.l());
  double start = std::pow(2.0, 1.0 / q);
  if (cache) {
    if (auto warm = cache->find(key); warm && *warm > 1.0 && *warm < 2.0) {
      start = *warm;
    }
  }
  ScaledRoot root;
  if (q <= kLaguerreMaxExponent) {
    result.method = PhiMethod::kLaguerre;
    root = Laguerre(q, start, tol);
  } else {
    result.method = PhiMethod::kFixedPoint;
    root = FixedPoint(q, start, tol);
  }
  if (!root.converged) {
    const ScaledRoot fallback = Bisect(q, tol);
    root.iterations += fallback.iterations;
    root.x = fallback.x;
    root.converged = fallback.converged;
  }
  if (!root.converged || !(root.x > 1.0) || !(root.x <= 2.0)) {
    throw Error(ErrorCode::kNoConvergence,
                "ratio solve failed for (" + std::to_string(v.l()) + ", " +
                    std::to_string(v.r()) + ")");
  }
  result.phi_pow_l = root.x;
  result.phi = std::pow(root.x, 1.0 / static_cast<double>(v.l()));
  result.iterations = root.iterations;
  if (cache) cache->store(key, result.phi_pow_l);
  return result;
}

}  // namespace

std::string_view ToString(PhiMethod method) {
  switch (method) {
    case PhiMethod::kLaguerre: return "laguerre";
    case PhiMethod::kFixedPoint: return "fixed-point";
    case PhiMethod::kClosedForm: return "closed-form";
  }
  return "unknown";
}

std::optional<double> PhiCache::find(Key key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

TrinomialValue trinomial_residual(double x, double q) {
  if (!(x > 1.0)) {
    throw Error(ErrorCode::kDomainError,
                "trinomial derivatives need x > 1, got " + std::to_string(x));
  }
  const double lx = std::log(x);
  const double xq = std::exp(q * lx);
  const double xq1 = std::exp((q - 1.0) * lx);
  const double xq2 = std::exp((q - 2.0) * lx);
  const double xq3 = std::exp((q - 3.0) * lx);
  TrinomialValue t;
  t.f = xq - xq1 - 1.0;
  t.df = q * xq1 - (q - 1.0) * xq2;
  t.d2f = q * (q - 1.0) * xq2 - (q - 1.0) * (q - 2.0) * xq3;
  return t;
}

PhiResult compute_phi(const Variable& v, double tol) {
  return Solve(v, nullptr, 0, tol);
}

PhiResult compute_phi(const Variable& v, PhiCache& cache, double tol) {
  return Solve(v, &cache, PhiCache::KeyFor(v), tol);
}

PhiResult compute_phi(const Variable& v, PhiCache& cache, PhiCache::Key key,
                      double tol) {
  return Solve(v, &cache, key, tol);
}

}  // namespace branchsim
