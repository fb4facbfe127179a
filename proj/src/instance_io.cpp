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

#include "branchsim/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include "branchsim/error.hpp"

namespace branchsim {
namespace {

[[noreturn]] void Fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> Tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t ToInt(std::string_view token, std::size_t line) {
  std::int64_t value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    Fail(line, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Instance ParseInstance(std::string_view text) {
  bool have_gap = false;
  std::int64_t gap = 0;
  std::vector<RawVariable> raw;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tok = Tokens(line);
    if (tok.empty()) continue;
    if (!have_gap) {
      if (tok.size() != 2 || tok[0] != "gap") Fail(line_no, "expected 'gap G' header");
      gap = ToInt(tok[1], line_no);
      have_gap = true;
      continue;
    }
    if (tok.size() != 3) Fail(line_no, "expected 'l r m'");
    raw.push_back({ToInt(tok[0], line_no), ToInt(tok[1], line_no),
                   ToInt(tok[2], line_no)});
  }
  if (!have_gap) Fail(line_no, "missing 'gap G' header");
  return validate_instance(raw, gap);
}

Instance ReadInstance(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return ParseInstance(text);
}

Instance ReadInstanceFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument, "cannot open " + path.string());
  }
  return ReadInstance(in);
}

std::string FormatInstance(const Instance& instance) {
  std::ostringstream out;
  WriteInstance(out, instance);
  return out.str();
}

void WriteInstance(std::ostream& out, const Instance& instance) {
  out << "gap " << instance.gap().value << '\n';
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const Variable& v = instance.variables()[i];
    out << v.l() << ' ' << v.r() << ' ' << instance.multiplicities()[i] << '\n';
  }
}

}  // namespace branchsim
