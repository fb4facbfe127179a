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

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "branchsim/dominance.hpp"
#include "branchsim/error.hpp"
#include "branchsim/experiment.hpp"
#include "branchsim/frontier.hpp"
#include "branchsim/generator.hpp"
#include "branchsim/gvb.hpp"
#include "branchsim/instance_io.hpp"
#include "branchsim/ratio.hpp"
#include "branchsim/scoring.hpp"
#include "branchsim/simulate.hpp"
#include "branchsim/version.hpp"

namespace branchsim::cli {
namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 1;

// A result table rendered as aligned text, CSV or a JSON array.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  // Digits after the decimal point in human output; -1 for %g style.
  std::vector<int> decimals;
  std::vector<std::string> notes;  // human output only
};

std::string Cell(const json& v, bool human, int decimals) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number_float()) {
    std::ostringstream s;
    if (human && decimals >= 0) {
      s << std::fixed << std::setprecision(decimals) << v.get<double>();
    } else {
      s << std::setprecision(human ? 10 : 17) << v.get<double>();
    }
    return s.str();
  }
  return v.dump();
}

void Render(std::ostream& out, const Table& t, const std::string& format) {
  auto decimals = [&](std::size_t c) {
    return c < t.decimals.size() ? t.decimals[c] : -1;
  };
  if (format == "json") {
    json arr = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = row[c];
      arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      out << (c ? "," : "") << t.columns[c];
    }
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "," : "") << Cell(row[c], false, -1);
      }
      out << '\n';
    }
    return;
  }
  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
  for (const auto& row : t.rows) {
    auto& line = text.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(Cell(row[c], true, decimals(c)));
      width[c] = std::max(width[c], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c]))
          << cells[c];
    }
    out << '\n';
  };
  emit(t.columns);
  for (const auto& line : text) emit(line);
  for (const auto& note : t.notes) out << note << '\n';
}

std::uint64_t ResolveSeed(const CLI::Option* flag, std::uint64_t value) {
  if (flag->count() > 0) return value;
  if (const char* env = std::getenv("BRANCHSIM_SEED"); env != nullptr && *env) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (errno != 0 || *end != '\0') {
      throw Error(ErrorCode::kInvalidArgument,
                  "BRANCHSIM_SEED is not an unsigned integer: " + std::string(env));
    }
    return parsed;
  }
  return kDefaultSeed;
}

std::vector<RuleKind> ParseRules(const std::string& list) {
  std::vector<RuleKind> rules;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) rules.push_back(ParseRuleKind(item));
  }
  if (rules.empty()) throw Error(ErrorCode::kInvalidArgument, "no rules given");
  return rules;
}

std::string UtcNow() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json RowsToJson(const std::vector<ExperimentRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json r = {{"category", ToString(row.category)}, {"gap", row.gap},
              {"included", row.included}, {"excluded", row.excluded}};
    for (std::size_t i = 0; i < row.rules.size(); ++i) {
      r[std::string(ToString(row.rules[i])) + "_pct"] = row.relative_percent[i];
    }
    out.push_back(std::move(r));
  }
  return out;
}

Table SummaryTable(const std::vector<ExperimentRow>& rows, bool with_best) {
  Table t;
  t.columns = {"category", "gap", "included", "excluded"};
  if (rows.empty()) return t;
  for (RuleKind k : rows.front().rules) {
    t.columns.push_back(std::string(ToString(k)) + "_pct");
  }
  if (with_best) t.columns.push_back("best");
  t.decimals.assign(t.columns.size(), 2);
  for (const auto& row : rows) {
    std::vector<json> cells = {std::string(ToString(row.category)), row.gap,
                               row.included, row.excluded};
    std::size_t best = 0;
    for (std::size_t i = 0; i < row.rules.size(); ++i) {
      cells.emplace_back(row.relative_percent[i]);
      if (row.relative_percent[i] < row.relative_percent[best]) best = i;
    }
    if (with_best) {
      cells.emplace_back(row.included > 0 ? std::string(ToString(row.rules[best]))
                                          : std::string("n/a"));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Table CheckTable(const std::vector<CheckResult>& checks) {
  Table t;
  t.columns = {"check", "status", "detail"};
  for (const auto& c : checks) {
    t.rows.push_back({c.name, c.passed ? "pass" : "FAIL", c.detail});
  }
  return t;
}

CheckResult CheckMvb(std::int64_t gap_max, const ClosedForm& closed_form) {
  const auto report = verify_mvb_counterexample(Gap{gap_max}, closed_form);
  CheckResult r{"mvb", report.passed(), ""};
  std::ostringstream d;
  d << "closed form vs DP for G<=" << gap_max << "; " << report.witness_gaps
    << " gaps where (2,4) strictly beats (3,3) at the root";
  if (const auto bad = report.first_failure()) d << "; first failure at G=" << *bad;
  r.detail = d.str();
  return r;
}

CheckResult CheckProp3() {
  const auto report = verify_prop3_counterexample();
  CheckResult r{"prop3", report.passed(), ""};
  std::ostringstream d;
  d << "optimal=" << report.optimal.ToString() << "; forced roots=";
  for (std::size_t i = 0; i < report.forced.size(); ++i) {
    d << (i ? "/" : "") << report.forced[i].ToString();
  }
  for (const auto& f : report.failures) d << "; " << f;
  r.detail = d.str();
  return r;
}

CheckResult CheckPhiResidual(int max_gain) {
  double worst = 0.0;
  std::string where;
  for (int l = 1; l <= max_gain; ++l) {
    for (int r = l; r <= max_gain; ++r) {
      const double phi = compute_phi(Variable(l, r)).phi;
      const double res = std::abs(std::pow(phi, r) - std::pow(phi, r - l) - 1.0);
      if (res > worst) {
        worst = res;
        where = "(" + std::to_string(l) + "," + std::to_string(r) + ")";
      }
    }
  }
  std::ostringstream d;
  d << "max residual " << worst << " at " << where << " over 1<=l<=r<=" << max_gain;
  return {"phi-residual", worst <= 1e-9, d.str()};
}

CheckResult CheckEq13(int n, int trials, std::uint64_t seed) {
  const CountSample s = SampleNondominatedCounts(n, trials, seed);
  const double z = (s.mean - s.expected) / s.std_error;
  std::ostringstream d;
  d << "n=" << n << ", " << trials << " trials: mean " << s.mean << " vs expected "
    << s.expected << " (z=" << std::setprecision(3) << z << ")";
  return {"eq13", std::abs(z) <= 3.0, d.str()};
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string format = "human";
  json params = json::object();
  std::optional<std::uint64_t> seed;
};

Instance LoadInstance(const std::string& path) { return ReadInstanceFile(path); }

}  // namespace

std::vector<CheckResult> VerifyAll(const VerifyOptions& options) {
  std::vector<CheckResult> checks;
  checks.push_back(CheckMvb(options.quick ? 100 : 1000, options.closed_form));
  checks.push_back(CheckProp3());
  checks.push_back(CheckPhiResidual(options.quick ? 20 : 60));
  checks.push_back(options.quick ? CheckEq13(8, 400, options.seed)
                                 : CheckEq13(10, 2000, options.seed));
  return checks;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  Context ctx{out, err, "human", json::object(), std::nullopt};
  std::string manifest_path;

  CLI::App app{"Branch-and-bound tree size models and variable selection rules",
               "branchsim"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.add_option("--format", ctx.format, "Output format")
      ->check(CLI::IsMember({"human", "csv", "json"}));
  app.add_option("--manifest", manifest_path,
                 "Write the run manifest here instead of stderr");

  // phi / classify
  Gain l = 0, r = 0;
  double tol = kDefaultPhiTolerance;
  auto* phi_cmd = app.add_subcommand("phi", "Branching ratio of one variable");
  phi_cmd->add_option("--l", l)->required();
  phi_cmd->add_option("--r", r)->required();
  phi_cmd->add_option("--tol", tol, "Convergence tolerance");
  auto* classify_cmd = app.add_subcommand(
      "classify", "Whether the branching ratio is expressible in radicals");
  classify_cmd->add_option("--l", l)->required();
  classify_cmd->add_option("--r", r)->required();

  // svb / mvb / gvb
  std::int64_t gap = 0;
  std::string instance_path;
  auto* svb_cmd = app.add_subcommand("svb", "Single-variable tree size");
  svb_cmd->add_option("--l", l)->required();
  svb_cmd->add_option("--r", r)->required();
  svb_cmd->add_option("--gap", gap)->required();
  auto* mvb_cmd = app.add_subcommand("mvb", "Optimal tree size with unlimited reuse");
  mvb_cmd->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
  auto* mvb_gap = mvb_cmd->add_option("--gap", gap, "Override the file's gap");
  std::int64_t force_root = -1;
  auto* gvb_cmd = app.add_subcommand("gvb", "Optimal tree size with multiplicities");
  gvb_cmd->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
  auto* gvb_force = gvb_cmd->add_option("--force-root", force_root,
                                        "Variable index to branch on at the root");

  // score
  std::string rule_name;
  ScoringParams params;
  std::string height_policy = "all";
  auto* score_cmd = app.add_subcommand("score", "Score every variable under a rule");
  score_cmd->add_option("--rule", rule_name)
      ->required()
      ->check(CLI::IsMember({"product", "ratio", "svts"}));
  score_cmd->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
  auto* score_gap = score_cmd->add_option("--gap", gap, "Override the file's gap");

  // simulate
  std::string category_name;
  int n_vars = 60;
  std::vector<std::int64_t> gaps;
  int n_instances = 100;
  std::uint64_t seed_value = 0;
  std::string rules_list = "product,ratio,svts";
  std::string out_path;
  std::string dag_path;
  int jobs = 1;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the rule comparison on random instances");
  sim_cmd->add_option("--category", category_name)
      ->required()
      ->check(CLI::IsMember({"balanced", "unbalanced", "very-unbalanced",
                             "extremely-unbalanced"}));
  sim_cmd->add_option("--n", n_vars, "Variables per instance")->check(CLI::Range(1, 64));
  sim_cmd->add_option("--gap", gaps, "Gap(s), comma separated")->required()->delimiter(',');
  sim_cmd->add_option("--instances", n_instances)->check(CLI::PositiveNumber);
  auto* sim_seed = sim_cmd->add_option("--seed", seed_value);
  sim_cmd->add_option("--rules", rules_list, "Comma separated; product is always included");
  sim_cmd->add_option("--out", out_path, "Per-instance CSV");
  sim_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--emit-dag", dag_path, "DOT file for instance 0's dominance DAG");
  sim_cmd->add_option("--height-policy", height_policy)->check(CLI::IsMember({"all", "any"}));
  sim_cmd->add_option("--height-threshold", params.height_threshold);

  // count-subsets
  std::vector<int> counts_n;
  int trials = 1000;
  auto* count_cmd = app.add_subcommand("count-subsets",
                                       "Measured vs expected non-dominated subset counts");
  count_cmd->add_option("--n", counts_n, "Instance size(s), comma separated")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(0, 64));
  count_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  auto* count_seed = count_cmd->add_option("--seed", seed_value);
  count_cmd->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Verification checks");
  verify_cmd->require_subcommand(1);
  std::int64_t gap_max = 1000;
  auto* verify_mvb = verify_cmd->add_subcommand("mvb", "Closed form and root choice on [(2,4),(3,3)]");
  verify_mvb->add_option("--gap-max", gap_max)->check(CLI::Range(std::int64_t{8}, std::int64_t{100000}));
  auto* verify_prop3 = verify_cmd->add_subcommand("prop3", "Dominated root can be optimal");
  bool quick = false;
  auto* verify_all = verify_cmd->add_subcommand("all", "Full verification bundle");
  verify_all->add_flag("--quick", quick, "Reduced sweep");
  auto* verify_seed = verify_all->add_option("--seed", seed_value);

  // table9
  std::string scale = "desk";
  auto* table_cmd = app.add_subcommand("table9", "Rule comparison across all categories and gaps");
  table_cmd->add_option("--scale", scale)->check(CLI::IsMember({"desk", "full"}));
  auto* table_seed = table_cmd->add_option("--seed", seed_value);
  table_cmd->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  table_cmd->add_option("--out", out_path, "Per-instance CSV");

  int code = kExitOk;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    params.height_policy =
        height_policy == "any" ? HeightPolicy::kAnyCandidate : HeightPolicy::kAllCandidates;

    if (phi_cmd->parsed()) {
      const Variable v(l, r);
      const PhiResult res = compute_phi(v, tol);
      const double residual =
          std::abs(std::pow(res.phi, v.r()) - std::pow(res.phi, v.r() - v.l()) - 1.0);
      Table t;
      t.columns = {"l", "r", "phi", "phi_pow_l", "iterations", "method", "residual"};
      t.rows.push_back({v.l(), v.r(), res.phi, res.phi_pow_l, res.iterations,
                        std::string(ToString(res.method)), residual});
      Render(out, t, ctx.format);
      ctx.params = {{"l", v.l()}, {"r", v.r()}, {"tol", tol}};
    } else if (classify_cmd->parsed()) {
      const Variable v(l, r);
      const SolvabilityVerdict s = classify_solvability(v);
      Table t;
      t.columns = {"l", "r", "d", "k1", "k2", "reducible", "verdict", "detail"};
      t.rows.push_back({v.l(), v.r(), s.d, s.k1, s.k2, s.reducible,
                        std::string(ToString(s.verdict)), s.detail});
      Render(out, t, ctx.format);
      ctx.params = {{"l", v.l()}, {"r", v.r()}};
    } else if (svb_cmd->parsed()) {
      const Variable v(l, r);
      if (gap < 0) throw Error(ErrorCode::kNegativeGap, "gap must be >= 0");
      const SvbTable table(v, Gap{gap});
      if (ctx.format == "human") {
        out << table[gap].ToString() << '\n';
      } else {
        Table t;
        t.columns = {"gap", "size", "choice"};
        for (std::int64_t g = 0; g <= gap; ++g) {
          t.rows.push_back({g, table[g].ToString(), g > 0 ? json(0) : json()});
        }
        Render(out, t, ctx.format);
      }
      ctx.params = {{"l", v.l()}, {"r", v.r()}, {"gap", gap}};
    } else if (mvb_cmd->parsed()) {
      const Instance inst = LoadInstance(instance_path);
      const std::int64_t g = mvb_gap->count() ? gap : inst.gap().value;
      if (g < 0) throw Error(ErrorCode::kNegativeGap, "gap must be >= 0");
      const MvbTable table(inst.variables(), Gap{g});
      if (ctx.format == "human") {
        out << table.size(g).ToString() << '\n';
        if (const auto c = table.choice(g)) {
          const Variable& v = inst.variables()[*c];
          out << "root: variable " << *c << " (" << v.l() << "," << v.r() << ")\n";
        }
      } else {
        Table t;
        t.columns = {"gap", "size", "choice"};
        for (std::int64_t x = 0; x <= g; ++x) {
          const auto c = table.choice(x);
          t.rows.push_back({x, table.size(x).ToString(), c ? json(*c) : json()});
        }
        Render(out, t, ctx.format);
      }
      ctx.params = {{"instance", instance_path}, {"gap", g}};
    } else if (gvb_cmd->parsed()) {
      const Instance inst = LoadInstance(instance_path);
      TreeSize size = TreeSize::Leaf();
      if (gvb_force->count()) {
        if (force_root < 0) throw Error(ErrorCode::kInvalidArgument, "--force-root must be >= 0");
        size = gvb_opt_size_with_forced_root(inst, static_cast<std::size_t>(force_root));
      } else {
        size = gvb_opt_size(inst);
      }
      if (ctx.format == "human") {
        out << size.ToString() << '\n';
      } else {
        Table t;
        t.columns = {"gap", "force_root", "size"};
        t.rows.push_back({inst.gap().value, gvb_force->count() ? json(force_root) : json(),
                          size.ToString()});
        Render(out, t, ctx.format);
      }
      ctx.params = {{"instance", instance_path},
                    {"force_root", gvb_force->count() ? json(force_root) : json()}};
    } else if (score_cmd->parsed()) {
      const Instance inst = LoadInstance(instance_path);
      const std::int64_t g = score_gap->count() ? gap : inst.gap().value;
      std::vector<Candidate> candidates;
      for (std::size_t i = 0; i < inst.size(); ++i) {
        if (inst.multiplicities()[i] > 0) candidates.push_back({i, inst.variables()[i]});
      }
      SelectionRule rule(ParseRuleKind(rule_name), params);
      const auto scores = rule.Scores(candidates, Gap{g});
      const std::size_t chosen = rule.select(candidates, Gap{g});
      Table t;
      t.columns = {"index", "l", "r", "product", "phi", "height", "svts", "svts_log", "selected"};
      for (const auto& s : scores) {
        t.rows.push_back({s.index, s.variable.l(), s.variable.r(), s.product, s.phi,
                          s.height,
                          s.svts.exact ? Uint128ToString(s.svts.value) : std::string("~"),
                          s.svts.log, s.index == chosen});
      }
      t.notes.push_back("selected index: " + std::to_string(chosen));
      if (rule.kind() == RuleKind::kRatio) {
        t.notes.push_back(std::string("ratio mode: ") +
                          (rule.RatioModeActive(candidates, Gap{g}) ? "on" : "off (product)"));
      }
      Render(out, t, ctx.format);
      ctx.params = {{"instance", instance_path}, {"gap", g}, {"rule", rule_name}};
    } else if (sim_cmd->parsed()) {
      ExperimentConfig config;
      config.category = ParseCategory(category_name);
      config.n_vars = n_vars;
      config.gaps = gaps;
      config.n_instances = n_instances;
      config.seed = ResolveSeed(sim_seed, seed_value);
      config.rules = ParseRules(rules_list);
      config.params = params;
      ctx.seed = config.seed;
      if (!dag_path.empty()) {
        const Instance first = ExperimentInstance(config, 0, gaps.front());
        std::ofstream dot(dag_path);
        if (!dot) throw Error(ErrorCode::kInvalidArgument, "cannot write " + dag_path);
        WriteDot(dot, DominanceDag(first.variables()), first.variables());
      }
      const ExperimentResult result = run_experiment(config, jobs);
      if (!out_path.empty()) {
        std::ofstream csv(out_path);
        if (!csv) throw Error(ErrorCode::kInvalidArgument, "cannot write " + out_path);
        WriteOutcomesCsv(csv, result.outcomes);
      }
      Render(out, SummaryTable(result.rows, false), ctx.format);
      json rules = json::array();
      for (RuleKind k : config.rules) rules.push_back(ToString(k));
      ctx.params = {{"category", category_name}, {"n", n_vars}, {"gaps", gaps},
                    {"instances", n_instances}, {"rules", rules}, {"jobs", jobs},
                    {"height_policy", height_policy},
                    {"height_threshold", params.height_threshold},
                    {"out", out_path}, {"rows", RowsToJson(result.rows)}};
    } else if (count_cmd->parsed()) {
      const std::uint64_t seed = ResolveSeed(count_seed, seed_value);
      ctx.seed = seed;
      Table t;
      t.columns = {"n", "trials", "mean", "stddev", "std_error", "expected", "z",
                   "ratio_to_1.2^n", "ratio_to_e^(2sqrt(n))"};
      for (int n : counts_n) {
        const CountSample s = SampleNondominatedCounts(n, trials, seed, jobs);
        const double z = s.std_error > 0 ? (s.mean - s.expected) / s.std_error : 0.0;
        t.rows.push_back({n, trials, s.mean, s.stddev, s.std_error, s.expected, z,
                          s.mean / std::pow(1.2, n), s.mean / std::exp(2.0 * std::sqrt(n))});
      }
      Render(out, t, ctx.format);
      ctx.params = {{"n", counts_n}, {"trials", trials}, {"jobs", jobs}};
    } else if (verify_cmd->parsed()) {
      std::vector<CheckResult> checks;
      if (verify_mvb->parsed()) {
        checks.push_back(CheckMvb(gap_max, mvb_closed_form));
        ctx.params = {{"check", "mvb"}, {"gap_max", gap_max}};
      } else if (verify_prop3->parsed()) {
        checks.push_back(CheckProp3());
        ctx.params = {{"check", "prop3"}};
      } else {
        VerifyOptions options;
        options.quick = quick;
        options.seed = ResolveSeed(verify_seed, seed_value);
        ctx.seed = options.seed;
        checks = VerifyAll(options);
        ctx.params = {{"check", "all"}, {"quick", quick}};
      }
      Render(out, CheckTable(checks), ctx.format);
      for (const auto& c : checks) {
        if (!c.passed) code = kExitVerificationFailed;
      }
    } else if (table_cmd->parsed()) {
      const Table9Scale sc = ParseTable9Scale(scale);
      const std::uint64_t seed = ResolveSeed(table_seed, seed_value);
      ctx.seed = seed;
      std::vector<ExperimentRow> rows;
      std::vector<InstanceOutcome> outcomes;
      std::size_t total = 0;
      for (Category c : AllCategories()) total += Table9Gaps(c, sc).size();
      std::size_t done = 0;
      for (Category c : AllCategories()) {
        const ExperimentConfig base = Table9Config(c, sc, seed);
        for (std::int64_t g : base.gaps) {
          ExperimentConfig config = base;
          config.gaps = {g};
          const auto t0 = std::chrono::steady_clock::now();
          ExperimentResult result = run_experiment(config, jobs);
          const double secs =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          ++done;
          err << "[table9] " << done << "/" << total << " " << ToString(c) << " gap=" << g
              << " (" << std::fixed << std::setprecision(1) << secs << "s)\n"
              << std::defaultfloat;
          rows.insert(rows.end(), result.rows.begin(), result.rows.end());
          outcomes.insert(outcomes.end(), result.outcomes.begin(), result.outcomes.end());
        }
      }
      if (!out_path.empty()) {
        std::ofstream csv(out_path);
        if (!csv) throw Error(ErrorCode::kInvalidArgument, "cannot write " + out_path);
        WriteOutcomesCsv(csv, outcomes);
      }
      Render(out, SummaryTable(rows, true), ctx.format);
      ctx.params = {{"scale", scale}, {"jobs", jobs}, {"out", out_path},
                    {"rows", RowsToJson(rows)}};
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::kVerificationFailed) {
      code = kExitVerificationFailed;
    } else if (IsNumericFailure(e.code())) {
      code = kExitNumeric;
    } else {
      code = kExitUsage;
    }
  } catch (const std::overflow_error& e) {
    err << "error: Overflow: " << e.what() << '\n';
    code = kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    code = kExitUsage;
  }

  std::string command_line = "branchsim";
  for (const auto& a : args) command_line += " " + a;
  const json manifest = {
      {"command_line", command_line},
      {"seed", ctx.seed ? json(*ctx.seed) : json()},
      {"generator", std::string(Xoshiro256StarStar::kName)},
      {"version", kVersion},
      {"started_utc", UtcNow()},
      {"wall_clock_seconds",
       std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()},
      {"exit_code", code},
      {"params", ctx.params},
  };
  if (!manifest_path.empty()) {
    std::ofstream m(manifest_path);
    m << manifest.dump(2) << '\n';
  } else {
    err << "manifest: " << manifest.dump() << '\n';
  }
  return code;
}

}  // namespace branchsim::cli
