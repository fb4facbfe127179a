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

#include "branchsim/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace branchsim {
namespace {

using u128 = unsigned __int128;
constexpr u128 kU128Max = ~static_cast<u128>(0);

double LogOf(u128 value) {
  const double hi = static_cast<double>(static_cast<std::uint64_t>(value >> 64));
  const double lo = static_cast<double>(static_cast<std::uint64_t>(value));
  return std::log(hi * 18446744073709551616.0 + lo);
}

// ln(1 + e^a + e^b) without overflow.
double LogBranch(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log(std::exp(-m) + std::exp(a - m) + std::exp(b - m));
}

}  // namespace

std::string_view ToString(RuleKind kind) {
  switch (kind) {
    case RuleKind::kProduct: return "product";
    case RuleKind::kRatio: return "ratio";
    case RuleKind::kSvts: return "svts";
  }
  return "unknown";
}

RuleKind ParseRuleKind(std::string_view name) {
  if (name == "product") return RuleKind::kProduct;
  if (name == "ratio") return RuleKind::kRatio;
  if (name == "svts") return RuleKind::kSvts;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown rule '" + std::string(name) + "'");
}

double product_score(const Variable& v, const ScoringParams& params) {
  return std::max(params.epsilon, static_cast<double>(v.l())) *
         std::max(params.epsilon, static_cast<double>(v.r()));
}

SvtsTable::SvtsTable(const Variable& v, std::int64_t max_gap) {
  const std::size_t len = static_cast<std::size_t>(std::max<std::int64_t>(max_gap, 0)) + 1;
  log_.assign(len, 0.0);
  exact_.reserve(len);
  exact_.push_back(1);
  bool exact = true;
  for (std::int64_t g = 1; g <= max_gap; ++g) {
    const std::int64_t a = g - v.l();
    const std::int64_t b = g - v.r();
    if (exact) {
      const u128 ta = exact_size(a);
      const u128 tb = exact_size(b);
      if (tb < kU128Max && ta <= kU128Max - 1 - tb) {
        const u128 t = 1 + ta + tb;
        exact_.push_back(t);
        log_[static_cast<std::size_t>(g)] = LogOf(t);
        continue;
      }
      exact = false;
    }
    log_[static_cast<std::size_t>(g)] = LogBranch(log_size(a), log_size(b));
  }
}

bool SvtsLess(const SvtsScore& a, const SvtsScore& b) {
  if (a.exact && b.exact) return a.value < b.value;
  if (a.exact != b.exact) return a.exact;
  return a.log < b.log;
}

SelectionRule::SelectionRule(RuleKind kind, ScoringParams params)
    : kind_(kind), params_(params) {
  if (!(params_.epsilon > 0.0) || params_.height_threshold < 1 ||
      params_.exact_size_gap_cap < 2 || !(params_.anchor_fraction > 0.0) ||
      params_.anchor_fraction > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid scoring parameters");
  }
}

void SelectionRule::Reset() {
  phi_.clear();
  svts_.clear();
}

double SelectionRule::Phi(const Variable& v) {
  const PhiCache::Key key = PhiCache::KeyFor(v);
  if (auto it = phi_.find(key); it != phi_.end()) return it->second;
  const double phi = compute_phi(v).phi;
  phi_.emplace(key, phi);
  return phi;
}

SvtsScore SelectionRule::Svts(const Variable& v, Gap gap) {
  const std::int64_t cap = params_.exact_size_gap_cap;
  const bool extrapolate = gap.value + 1 > cap;
  std::int64_t lookup = gap.value;
  if (extrapolate) {
    lookup = static_cast<std::int64_t>(
        std::floor(params_.anchor_fraction * static_cast<double>(cap - 1)));
    lookup -= (v.l() - (gap.value - lookup) % v.l()) % v.l();
    lookup = std::max<std::int64_t>(lookup, 0);
  }
  const PhiCache::Key key = PhiCache::KeyFor(v);
  auto it = svts_.find(key);
  if (it == svts_.end() || it->second.max_gap() < lookup) {
    it = svts_.insert_or_assign(key, SvtsTable(v, lookup)).first;
  }
  const SvtsTable& table = it->second;
  SvtsScore score;
  if (!extrapolate && table.exact(lookup)) {
    score.exact = true;
    score.value = table.exact_size(lookup);
    score.log = table.log_size(lookup);
    return score;
  }
  score.exact = false;
  score.log = table.log_size(lookup);
  if (extrapolate) {
    score.log += static_cast<double>(gap.value - lookup) * std::log(Phi(v));
  }
  return score;
}

bool SelectionRule::RatioModeActive(std::span<const Candidate> candidates,
                                    Gap gap) const {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  for (const Candidate& c : candidates) {
    const std::int64_t h = gap.value / c.variable.l();
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  const std::int64_t height =
      params_.height_policy == HeightPolicy::kAllCandidates ? lo : hi;
  return height > params_.height_threshold;
}

std::size_t SelectionRule::select(std::span<const Candidate> candidates,
                                  Gap gap) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kPreconditionViolation, "no candidates to select");
  }
  if (gap.value < 1) {
    throw Error(ErrorCode::kPreconditionViolation, "select needs G >= 1");
  }
  if (candidates.size() == 1) return candidates.front().index;
  switch (kind_) {
    case RuleKind::kProduct:
      return SelectProduct(candidates);
    case RuleKind::kRatio:
      return RatioModeActive(candidates, gap) ? SelectRatio(candidates)
                                              : SelectProduct(candidates);
    case RuleKind::kSvts:
      return SelectSvts(candidates, gap);
  }
  return candidates.front().index;
}

std::size_t SelectionRule::BreakTies(std::span<const Candidate> candidates,
                                     const std::vector<char>& tied) {
  std::optional<std::size_t> best;
  double best_phi = 0.0;
  const bool single =
      std::count(tied.begin(), tied.end(), char{1}) == 1;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!tied[i]) continue;
    if (single) return candidates[i].index;
    const double phi = Phi(candidates[i].variable);
    if (!best || phi < best_phi ||
        (phi == best_phi && candidates[i].index < candidates[*best].index)) {
      best = i;
      best_phi = phi;
    }
  }
  return candidates[*best].index;
}

std::size_t SelectionRule::SelectProduct(std::span<const Candidate> candidates) {
  std::vector<double> scores(candidates.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    scores[i] = product_score(candidates[i].variable, params_);
    top = std::max(top, scores[i]);
  }
  std::vector<char> tied(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) tied[i] = scores[i] == top;
  return BreakTies(candidates, tied);
}

std::size_t SelectionRule::SelectRatio(std::span<const Candidate> candidates) {
  std::optional<std::size_t> best;
  double best_phi = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double phi = Phi(candidates[i].variable);
    if (!best || phi < best_phi ||
        (phi == best_phi && candidates[i].index < candidates[*best].index)) {
      best = i;
      best_phi = phi;
    }
  }
  return candidates[*best].index;
}

std::size_t SelectionRule::SelectSvts(std::span<const Candidate> candidates,
                                      Gap gap) {
  std::vector<SvtsScore> scores;
  scores.reserve(candidates.size());
  std::size_t min_i = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    scores.push_back(Svts(candidates[i].variable, gap));
    if (SvtsLess(scores[i], scores[min_i])) min_i = i;
  }
  const SvtsScore& best = scores[min_i];
  const double window =
      params_.log_tie_tolerance * std::max(1.0, std::abs(best.log));
  std::vector<char> tied(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (best.exact) {
      tied[i] = scores[i].exact && scores[i].value == best.value;
    } else {
      tied[i] = !scores[i].exact && scores[i].log <= best.log + window;
    }
  }
  return BreakTies(candidates, tied);
}

std::vector<CandidateScore> SelectionRule::Scores(
    std::span<const Candidate> candidates, Gap gap) {
  std::vector<CandidateScore> out;
  out.reserve(candidates.size());
  for (const Candidate& c : candidates) {
    CandidateScore s;
    s.index = c.index;
    s.variable = c.variable;
    s.product = product_score(c.variable, params_);
    s.phi = Phi(c.variable);
    s.height = gap.value / c.variable.l();
    s.svts = Svts(c.variable, gap);
    out.push_back(s);
  }
  return out;
}

}  // namespace branchsim
