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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "branchsim/core.hpp"

namespace branchsim {

// Text form:
//   gap G
//   l r m      (one line per variable)
// Blank lines and anything after '#' are ignored. Throws ParseError with a
// line number on malformed input, and the core validation errors otherwise.
Instance ParseInstance(std::string_view text);
Instance ReadInstance(std::istream& in);
Instance ReadInstanceFile(const std::filesystem::path& path);

// Canonical text; ParseInstance(FormatInstance(x)) == x and formatting the
// result again reproduces the same bytes.
std::string FormatInstance(const Instance& instance);
void WriteInstance(std::ostream& out, const Instance& instance);

}  // namespace branchsim
