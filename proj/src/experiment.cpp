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

#include "branchsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <omp.h>

#include "branchsim/frontier.hpp"
#include "branchsim/simulate.hpp"

namespace branchsim {
namespace {

std::vector<RuleKind> RuleList(const ExperimentConfig& config) {
  std::vector<RuleKind> rules = {RuleKind::kProduct};
  for (RuleKind kind : config.rules) {
    if (std::find(rules.begin(), rules.end(), kind) == rules.end()) {
      rules.push_back(kind);
    }
  }
  return rules;
}

// Simulates one (gap, instance) task under every rule into out[0..rules).
void RunTask(const ExperimentConfig& config, const std::vector<RuleKind>& rules,
             std::size_t task, InstanceOutcome* out) {
  const std::size_t gi = task / static_cast<std::size_t>(config.n_instances);
  const int instance_id = static_cast<int>(task % static_cast<std::size_t>(config.n_instances));
  const std::int64_t gap = config.gaps[gi];
  const Instance inst = ExperimentInstance(config, instance_id, gap);
  for (std::size_t ri = 0; ri < rules.size(); ++ri) {
    InstanceOutcome& o = out[ri];
    o.category = config.category;
    o.gap = gap;
    o.seed = config.seed;
    o.instance_id = instance_id;
    o.rule = rules[ri];
    SelectionRule rule(rules[ri], config.params);
    try {
      o.size = simulate_tree_size(inst, rule);
      o.status = o.size.finite() ? OutcomeStatus::kOk : OutcomeStatus::kInfeasible;
    } catch (const Error& e) {
      if (!IsNumericFailure(e.code())) throw;
      o.size = TreeSize::Infeasible();
      o.status = OutcomeStatus::kOverflow;
    }
  }
}

std::uint64_t CountFor(int n, std::uint64_t seed) {
  const auto vars = generate_unique_coordinate_variables(n, seed);
  if (n <= 20) return count_nondominated_subsets(vars);
  return enumerate_frontiers(vars).size();
}

CountSample Finish(int n, int trials, const std::vector<std::uint64_t>& counts) {
  CountSample s;
  s.n = n;
  s.trials = trials;
  s.expected = expected_nondominated_count(n);
  if (counts.empty()) return s;
  double sum = 0.0;
  for (std::uint64_t c : counts) sum += static_cast<double>(c);
  s.mean = sum / static_cast<double>(counts.size());
  double sq = 0.0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - s.mean;
    sq += d * d;
  }
  if (counts.size() > 1) {
    s.stddev = std::sqrt(sq / static_cast<double>(counts.size() - 1));
    s.std_error = s.stddev / std::sqrt(static_cast<double>(counts.size()));
  }
  return s;
}

constexpr std::uint64_t kCountStream = 0xC0C0;

}  // namespace

void Validate(const ExperimentConfig& config) {
  if (config.n_vars < 1 || config.n_vars > static_cast<int>(kMaxSimVariables)) {
    throw Error(ErrorCode::kInvalidArgument, "n_vars must be in [1, 64]");
  }
  if (config.n_instances < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_instances must be >= 1");
  }
  if (config.gaps.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one gap is required");
  }
  for (std::int64_t g : config.gaps) {
    if (g <= 0) throw Error(ErrorCode::kInvalidArgument, "gaps must be > 0");
  }
}

std::string_view ToString(OutcomeStatus status) {
  switch (status) {
    case OutcomeStatus::kOk: return "ok";
    case OutcomeStatus::kInfeasible: return "infeasible";
    case OutcomeStatus::kOverflow: return "overflow";
  }
  return "unknown";
}

Instance ExperimentInstance(const ExperimentConfig& config, int instance_id,
                            std::int64_t gap) {
  const std::uint64_t seed =
      DeriveSeed(config.seed, static_cast<std::uint64_t>(config.category),
                 static_cast<std::uint64_t>(instance_id));
  return generate_instance(config.category, config.n_vars, seed, Gap{gap});
}

ExperimentResult run_experiment_serial(const ExperimentConfig& config) {
  Validate(config);
  const auto rules = RuleList(config);
  const std::size_t tasks = config.gaps.size() * static_cast<std::size_t>(config.n_instances);
  ExperimentResult result;
  result.outcomes.resize(tasks * rules.size());
  for (std::size_t t = 0; t < tasks; ++t) {
    RunTask(config, rules, t, &result.outcomes[t * rules.size()]);
  }
  result.rows = Summarize(config, result.outcomes);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int jobs) {
  Validate(config);
  const auto rules = RuleList(config);
  const std::size_t tasks = config.gaps.size() * static_cast<std::size_t>(config.n_instances);
  ExperimentResult result;
  result.outcomes.resize(tasks * rules.size());
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  // Exceptions may not cross the parallel region; keep the first one.
  std::exception_ptr failure;
  const auto n_tasks = static_cast<std::int64_t>(tasks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t t = 0; t < n_tasks; ++t) {
    try {
      RunTask(config, rules, static_cast<std::size_t>(t),
              &result.outcomes[static_cast<std::size_t>(t) * rules.size()]);
    } catch (...) {
#pragma omp critical(branchsim_experiment_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  result.rows = Summarize(config, result.outcomes);
  return result;
}

std::vector<ExperimentRow> Summarize(const ExperimentConfig& config,
                                     const std::vector<InstanceOutcome>& outcomes) {
  const auto rules = RuleList(config);
  const std::size_t per_gap = static_cast<std::size_t>(config.n_instances) * rules.size();
  std::vector<ExperimentRow> rows;
  for (std::size_t gi = 0; gi < config.gaps.size(); ++gi) {
    ExperimentRow row;
    row.category = config.category;
    row.gap = config.gaps[gi];
    row.rules = rules;
    std::vector<double> log_sum(rules.size(), 0.0);
    for (int k = 0; k < config.n_instances; ++k) {
      const InstanceOutcome* o = &outcomes[gi * per_gap + static_cast<std::size_t>(k) * rules.size()];
      const bool complete = std::all_of(o, o + rules.size(), [](const InstanceOutcome& x) {
        return x.status == OutcomeStatus::kOk;
      });
      if (!complete) {
        ++row.excluded;
        continue;
      }
      ++row.included;
      for (std::size_t ri = 0; ri < rules.size(); ++ri) log_sum[ri] += o[ri].size.log();
    }
    row.relative_percent.assign(rules.size(), 0.0);
    if (row.included > 0) {
      for (std::size_t ri = 0; ri < rules.size(); ++ri) {
        const double diff = (log_sum[ri] - log_sum[0]) / row.included;
        row.relative_percent[ri] = 100.0 * std::expm1(diff);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

constexpr std::string_view kOutcomeHeader =
    "category,gap,seed,instance_id,rule,tree_size,status";

void WriteOutcomesCsv(std::ostream& out,
                      const std::vector<InstanceOutcome>& outcomes) {
  out << kOutcomeHeader << '\n';
  for (const InstanceOutcome& o : outcomes) {
    out << ToString(o.category) << ',' << o.gap << ',' << o.seed << ','
        << o.instance_id << ',' << ToString(o.rule) << ','
        << (o.status == OutcomeStatus::kOk ? o.size.ToString() : std::string())
        << ',' << ToString(o.status) << '\n';
  }
}

OutcomeStatus ParseOutcomeStatus(std::string_view name) {
  if (name == "ok") return OutcomeStatus::kOk;
  if (name == "infeasible") return OutcomeStatus::kInfeasible;
  if (name == "overflow") return OutcomeStatus::kOverflow;
  throw Error(ErrorCode::kParseError, "unknown status '" + std::string(name) + "'");
}

std::vector<InstanceOutcome> ReadOutcomesCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kOutcomeHeader) {
    throw Error(ErrorCode::kParseError, "missing outcome CSV header");
  }
  std::vector<InstanceOutcome> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 7) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected 7 fields");
    }
    try {
      InstanceOutcome o;
      o.category = ParseCategory(f[0]);
      o.gap = std::stoll(f[1]);
      o.seed = std::stoull(f[2]);
      o.instance_id = std::stoi(f[3]);
      o.rule = ParseRuleKind(f[4]);
      o.status = ParseOutcomeStatus(f[6]);
      o.size = o.status == OutcomeStatus::kOk ? TreeSize(Count(f[5]))
                                              : TreeSize::Infeasible();
      out.push_back(o);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

Table9Scale ParseTable9Scale(std::string_view name) {
  if (name == "desk") return Table9Scale::kDesk;
  if (name == "full") return Table9Scale::kFull;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown scale '" + std::string(name) + "' (desk|full)");
}

std::vector<std::int64_t> Table9Gaps(Category category, Table9Scale scale) {
  std::vector<std::int64_t> gaps;
  switch (category) {
    case Category::kBalanced: gaps = {5000, 9000, 12000}; break;
    case Category::kUnbalanced: gaps = {4000, 7000, 9000}; break;
    case Category::kVeryUnbalanced: gaps = {3000, 5000, 6000}; break;
    case Category::kExtremelyUnbalanced: gaps = {2000, 3000, 3500}; break;
  }
  if (scale == Table9Scale::kDesk) {
    for (auto& g : gaps) g /= 2;
  }
  return gaps;
}

ExperimentConfig Table9Config(Category category, Table9Scale scale,
                              std::uint64_t seed) {
  ExperimentConfig config;
  config.category = category;
  config.gaps = Table9Gaps(category, scale);
  config.seed = seed;
  config.n_vars = scale == Table9Scale::kFull ? 60 : 30;
  config.n_instances = scale == Table9Scale::kFull ? 3000 : 100;
  return config;
}

CountSample SampleNondominatedCountsSerial(int n, int trials, std::uint64_t seed) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max(trials, 0)));
  for (int t = 0; t < trials; ++t) {
    counts[static_cast<std::size_t>(t)] =
        CountFor(n, DeriveSeed(seed, kCountStream, static_cast<std::uint64_t>(t)));
  }
  return Finish(n, trials, counts);
}

CountSample SampleNondominatedCounts(int n, int trials, std::uint64_t seed,
                                     int jobs) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max(trials, 0)));
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (int t = 0; t < trials; ++t) {
    try {
      counts[static_cast<std::size_t>(t)] =
          CountFor(n, DeriveSeed(seed, kCountStream, static_cast<std::uint64_t>(t)));
    } catch (...) {
#pragma omp critical(branchsim_count_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return Finish(n, trials, counts);
}

}  // namespace branchsim
