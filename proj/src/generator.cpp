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

#include "branchsim/generator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace branchsim {
namespace {

constexpr std::uint64_t Rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

constexpr std::array<CategorySpec, 4> kSpecs = {{
    {Category::kBalanced, "balanced", {1, 1000}, {1, 1000}},
    {Category::kUnbalanced, "unbalanced", {1, 500}, {501, 1000}},
    {Category::kVeryUnbalanced, "very-unbalanced", {1, 250}, {251, 1000}},
    {Category::kExtremelyUnbalanced, "extremely-unbalanced", {1, 125}, {126, 1000}},
}};

constexpr std::array<Category, 4> kCategories = {
    Category::kBalanced, Category::kUnbalanced, Category::kVeryUnbalanced,
    Category::kExtremelyUnbalanced};

std::vector<std::int64_t> Ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<std::int64_t> rank(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    rank[order[pos]] = static_cast<std::int64_t>(pos) + 1;
  }
  return rank;
}

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) {
  SplitMix64 sm(seed);
  for (auto& word : s_) word = sm.next();
}

std::uint64_t Xoshiro256StarStar::next() {
  const std::uint64_t result = Rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = Rotl(s_[3], 45);
  return result;
}

std::uint64_t Xoshiro256StarStar::bounded(std::uint64_t range) {
  if (range == 0) {
    throw Error(ErrorCode::kInvalidArgument, "bounded() needs a positive range");
  }
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * range;
  auto low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::int64_t Xoshiro256StarStar::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw Error(ErrorCode::kInvalidArgument, "uniform() needs lo <= hi");
  }
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(bounded(span));
}

double Xoshiro256StarStar::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream,
                         std::uint64_t index) {
  SplitMix64 sm(base ^ (stream * 0xD1B54A32D192ED03ull));
  const std::uint64_t salt = sm.next();
  SplitMix64 item(salt + index * 0x9E3779B97F4A7C15ull);
  return item.next();
}

const CategorySpec& Spec(Category category) {
  return kSpecs[static_cast<std::size_t>(category)];
}

std::span<const Category> AllCategories() { return kCategories; }

Category ParseCategory(std::string_view name) {
  for (const CategorySpec& spec : kSpecs) {
    if (spec.name == name) return spec.category;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown category '" + std::string(name) + "'");
}

std::string_view ToString(Category category) { return Spec(category).name; }

std::vector<Variable> generate_variables(Category category, int n,
                                         std::uint64_t seed) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one variable");
  }
  const CategorySpec& spec = Spec(category);
  Xoshiro256StarStar rng(seed);
  std::vector<Variable> vars;
  vars.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Gain l = rng.uniform(spec.l.lo, spec.l.hi);
    const Gain r = rng.uniform(spec.r.lo, spec.r.hi);
    vars.emplace_back(l, r);
  }
  return vars;
}

Instance generate_instance(Category category, int n, std::uint64_t seed,
                           Gap gap) {
  return Instance(generate_variables(category, n, seed),
                  Multiplicities(static_cast<std::size_t>(n), 1), gap);
}

std::vector<Variable> generate_unique_coordinate_variables(int n,
                                                           std::uint64_t seed) {
  if (n < 0) {
    throw Error(ErrorCode::kInvalidArgument, "n must be >= 0");
  }
  Xoshiro256StarStar rng(seed);
  std::vector<double> l(static_cast<std::size_t>(n));
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    l[i] = rng.uniform01();
    r[i] = rng.uniform01();
  }
  const auto lr = Ranks(l);
  const auto rr = Ranks(r);
  std::vector<Variable> vars;
  vars.reserve(static_cast<std::size_t>(n));
  // Shift r above every l so Variable never swaps a pair; swapping would
  // couple the two coordinates.
  for (int i = 0; i < n; ++i) vars.emplace_back(lr[i], rr[i] + n);
  return vars;
}

}  // namespace branchsim
