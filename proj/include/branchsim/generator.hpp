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

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "branchsim/core.hpp"

namespace branchsim {

// SplitMix64 (Steele, Lea, Flood 2014). Used to expand seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna), state filled from four SplitMix64
// outputs of the seed. The generator identity is part of the output
// contract: the same seed must give the same instances everywhere.
class Xoshiro256StarStar {
 public:
  static constexpr std::string_view kName = "xoshiro256**/splitmix64";

  explicit Xoshiro256StarStar(std::uint64_t seed);

  std::uint64_t next();
  // Uniform in [0, range) by Lemire's multiply-shift with rejection.
  std::uint64_t bounded(std::uint64_t range);
  // Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  // Uniform double in [0, 1) from the top 53 bits.
  double uniform01();

 private:
  std::array<std::uint64_t, 4> s_;
};

// Seed for item `index` of stream `stream` under a base seed.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream,
                         std::uint64_t index);

enum class Category {
  kBalanced,
  kUnbalanced,
  kVeryUnbalanced,
  kExtremelyUnbalanced,
};

struct GainRange {
  Gain lo;
  Gain hi;
};

struct CategorySpec {
  Category category;
  std::string_view name;
  GainRange l;
  GainRange r;
};

const CategorySpec& Spec(Category category);
std::span<const Category> AllCategories();
// Accepts the spec names: balanced, unbalanced, very-unbalanced,
// extremely-unbalanced. Throws InvalidArgument otherwise.
Category ParseCategory(std::string_view name);
std::string_view ToString(Category category);

// n variables drawn from the category's ranges, l then r per variable.
// Balanced draws both gains from [1, 1000] and lets Variable swap them.
std::vector<Variable> generate_variables(Category category, int n,
                                         std::uint64_t seed);
// Same variables, multiplicity 1 each.
Instance generate_instance(Category category, int n, std::uint64_t seed,
                           Gap gap = Gap{0});

// Continuous-draw surrogate: l and r are independent uniform reals,
// replaced by their ranks 1..n. Coordinates are unique and the dominance
// structure is that of the continuous sample.
std::vector<Variable> generate_unique_coordinate_variables(int n,
                                                           std::uint64_t seed);

}  // namespace branchsim
