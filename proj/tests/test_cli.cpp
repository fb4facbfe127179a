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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "commands.hpp"

#include "branchsim/experiment.hpp"
#include "branchsim/trees.hpp"

using namespace branchsim;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("branchsim_test_" + name);
}

std::string WriteFile(const std::string& name, const std::string& text) {
  const auto path = TempPath(name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("cli prints phi and classification") {
  const Result r = Run({"phi", "--l", "1", "--r", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j[0]["phi"].get<double>() - 1.6180339887498949) < 1e-12);
  CHECK(j[0]["method"] == "laguerre");
  CHECK(r.err.find("manifest:") != std::string::npos);
  const Result c = Run({"classify", "--l", "5", "--r", "7", "--format", "csv"});
  CHECK(c.code == 0);
  CHECK(c.out.find("not-solvable") != std::string::npos);
}

TEST_CASE("cli tree sizes") {
  CHECK(Run({"svb", "--l", "2", "--r", "5", "--gap", "6"}).out == "9\n");
  const Result csv = Run({"svb", "--l", "2", "--r", "5", "--gap", "3", "--format", "csv"});
  CHECK(csv.out == "gap,size,choice\n0,1,\n1,3,0\n2,3,0\n3,5,0\n");
  const std::string pair = WriteFile("pair.txt", "gap 8\n2 4 1\n3 3 1\n");
  const Result mvb = Run({"mvb", "--instance", pair});
  CHECK(mvb.out.rfind("13\n", 0) == 0);
  const Result mvb_csv = Run({"mvb", "--instance", pair, "--gap", "2", "--format", "csv"});
  CHECK(mvb_csv.out == "gap,size,choice\n0,1,\n1,3,0\n2,3,0\n");
  const std::string fig = WriteFile("fig.txt", "gap 15\n5 6 1\n9 9 1\n5 10 1\n");
  CHECK(Run({"gvb", "--instance", fig}).out == "9\n");
  CHECK(Run({"gvb", "--instance", fig, "--force-root", "1"}).out == "11\n");
  const Result score = Run({"score", "--rule", "product", "--instance", fig, "--format", "json"});
  const json rows = json::parse(score.out);
  CHECK(rows[1]["selected"] == true);
  CHECK(rows[0]["selected"] == false);
}

TEST_CASE("cli exit codes") {
  CHECK(Run({"table9", "--scale", "huge"}).code == cli::kExitUsage);
  CHECK(Run({"bogus"}).code == cli::kExitUsage);
  CHECK(Run({}).code == cli::kExitUsage);
  CHECK(Run({"phi", "--l", "0", "--r", "2"}).code == cli::kExitUsage);
  CHECK(Run({"--help"}).code == cli::kExitOk);
  const Result overflow = Run({"svb", "--l", "1", "--r", "1", "--gap", "600"});
  CHECK(overflow.code == cli::kExitNumeric);
  CHECK(overflow.err.find("Overflow") != std::string::npos);
  const std::string broken = WriteFile("broken.txt", "gap 3\n1 2\n");
  CHECK(Run({"gvb", "--instance", broken}).code == cli::kExitUsage);
  CHECK(Run({"verify", "prop3"}).code == cli::kExitOk);
  CHECK(Run({"verify", "mvb", "--gap-max", "7"}).code == cli::kExitUsage);
}

TEST_CASE("verification bundle") {
  const Result r = Run({"verify", "all", "--quick", "--format", "csv"});
  CHECK(r.code == 0);
  for (const char* name : {"mvb,pass", "prop3,pass", "phi-residual,pass", "eq13,pass"}) {
    CHECK(r.out.find(name) != std::string::npos);
  }
  cli::VerifyOptions options;
  options.quick = true;
  options.closed_form = [](Gap g) {
    return g.value == 20 ? TreeSize(mvb_closed_form(g).count() + 2) : mvb_closed_form(g);
  };
  const auto checks = cli::VerifyAll(options);
  CHECK_FALSE(checks[0].passed);
  CHECK(checks[0].detail.find("G=20") != std::string::npos);
  CHECK(checks[1].passed);
}

TEST_CASE("simulate writes outcomes, a DAG and a manifest") {
  const auto csv = TempPath("out.csv");
  const auto dot = TempPath("dag.dot");
  const auto manifest = TempPath("manifest.json");
  const std::vector<std::string> args = {
      "simulate", "--category", "very-unbalanced", "--n", "12", "--gap", "300,600",
      "--instances", "6", "--seed", "9", "--out", csv.string(), "--emit-dag", dot.string(),
      "--manifest", manifest.string(), "--jobs", "2"};
  const Result r = Run(args);
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  std::ifstream in(csv);
  const auto outcomes = ReadOutcomesCsv(in);
  CHECK(outcomes.size() == 2 * 6 * 3);
  CHECK(outcomes[0].seed == 9);
  std::ifstream dot_in(dot);
  const std::string dot_text((std::istreambuf_iterator<char>(dot_in)), {});
  CHECK(dot_text.find("digraph") != std::string::npos);
  std::ifstream m(manifest);
  const json j = json::parse(m);
  CHECK(j["seed"] == 9);
  CHECK(j["generator"] == "xoshiro256**/splitmix64");
  CHECK(j["params"]["gaps"] == json::array({300, 600}));
  CHECK(j.contains("wall_clock_seconds"));
  CHECK(j["command_line"].get<std::string>().find("simulate") != std::string::npos);
  // Same command, same results.
  CHECK(Run(args).out == r.out);
}

TEST_CASE("seed comes from the environment when not given") {
  ::setenv("BRANCHSIM_SEED", "4242", 1);
  const auto manifest = TempPath("env_manifest.json");
  const Result r = Run({"count-subsets", "--n", "6", "--trials", "20", "--manifest",
                        manifest.string()});
  ::unsetenv("BRANCHSIM_SEED");
  REQUIRE(r.code == 0);
  std::ifstream m(manifest);
  CHECK(json::parse(m)["seed"] == 4242);
  ::setenv("BRANCHSIM_SEED", "nope", 1);
  CHECK(Run({"count-subsets", "--n", "6", "--trials", "20"}).code == cli::kExitUsage);
  ::unsetenv("BRANCHSIM_SEED");
}
