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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "branchsim/core.hpp"
#include "branchsim/ratio.hpp"

namespace branchsim {

enum class RuleKind { kProduct, kRatio, kSvts };

std::string_view ToString(RuleKind kind);
// Accepts "product", "ratio", "svts". Throws InvalidArgument otherwise.
RuleKind ParseRuleKind(std::string_view name);

// Which candidates' estimated heights floor(G / l_i) must exceed the
// threshold before the ratio rule switches from product to ratio scoring.
enum class HeightPolicy {
  kAllCandidates,  // min_i floor(G / l_i) > threshold
  kAnyCandidate,   // max_i floor(G / l_i) > threshold
};

struct ScoringParams {
  double epsilon = 1e-6;
  std::int64_t height_threshold = 10;
  HeightPolicy height_policy = HeightPolicy::kAllCandidates;
  // svts evaluates single-variable sizes exactly while the table for gap G
  // (G + 1 cells) fits in this many cells, otherwise extrapolates.
  std::int64_t exact_size_gap_cap = 1'000'000;
  // Extrapolation anchor is floor(anchor_fraction * (cap - 1)), moved down
  // so that G - anchor is a multiple of l.
  double anchor_fraction = 1.0;
  // Log-domain sizes within this relative distance are treated as tied.
  double log_tie_tolerance = 1e-10;
};

struct Candidate {
  std::size_t index = 0;
  Variable variable{1, 1};
};

double product_score(const Variable& v, const ScoringParams& params = {});

// Single-variable tree sizes for gaps 0..max_gap. Exact in 128 bits while
// they fit, in the log domain throughout.
class SvtsTable {
 public:
  SvtsTable(const Variable& v, std::int64_t max_gap);

  std::int64_t max_gap() const {
    return static_cast<std::int64_t>(log_.size()) - 1;
  }
  bool exact(std::int64_t gap) const {
    return gap < static_cast<std::int64_t>(exact_.size());
  }
  unsigned __int128 exact_size(std::int64_t gap) const {
    return gap <= 0 ? 1 : exact_[static_cast<std::size_t>(gap)];
  }
  double log_size(std::int64_t gap) const {
    return gap <= 0 ? 0.0 : log_[static_cast<std::size_t>(gap)];
  }

 private:
  std::vector<unsigned __int128> exact_;
  std::vector<double> log_;
};

struct SvtsScore {
  bool exact = true;
  unsigned __int128 value = 1;  // valid when exact
  double log = 0.0;
};

// Per-candidate view used by the CLI's score command.
struct CandidateScore {
  std::size_t index = 0;
  Variable variable{1, 1};
  double product = 0.0;
  double phi = 0.0;
  std::int64_t height = 0;
  SvtsScore svts;
};

// A variable selection rule f(candidates, G). Deterministic: the result
// depends only on the candidate set and G, never on call history or
// candidate order. Ties fall back to smaller phi, then lower index.
// Holds memo tables, so one instance must not be shared between threads.
class SelectionRule {
 public:
  explicit SelectionRule(RuleKind kind, ScoringParams params = {});

  RuleKind kind() const { return kind_; }
  const ScoringParams& params() const { return params_; }

  // Returns the chosen Candidate::index. Throws PreconditionViolation for
  // an empty candidate list or G < 1.
  std::size_t select(std::span<const Candidate> candidates, Gap gap);

  std::vector<CandidateScore> Scores(std::span<const Candidate> candidates,
                                     Gap gap);

  // True when the ratio rule would use ratio scoring for these candidates.
  bool RatioModeActive(std::span<const Candidate> candidates, Gap gap) const;

  double Phi(const Variable& v);
  SvtsScore Svts(const Variable& v, Gap gap);

  // Drops memoized phi values and svts tables.
  void Reset();

 private:
  std::size_t SelectProduct(std::span<const Candidate> candidates);
  std::size_t SelectRatio(std::span<const Candidate> candidates);
  std::size_t SelectSvts(std::span<const Candidate> candidates, Gap gap);
  std::size_t BreakTies(std::span<const Candidate> candidates,
                        const std::vector<char>& tied);

  RuleKind kind_;
  ScoringParams params_;
  std::unordered_map<PhiCache::Key, double> phi_;
  std::unordered_map<PhiCache::Key, SvtsTable> svts_;
};

// Orders svts scores: exact sizes compare exactly, any exact size is
// smaller than a size that no longer fits, log-domain sizes compare by log.
bool SvtsLess(const SvtsScore& a, const SvtsScore& b);

}  // namespace branchsim
