// Copyright 2026 The agebias Authors
//
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

// agebias command-line driver.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "agebias/analytics.hpp"
#include "agebias/coupling.hpp"
#include "agebias/exact.hpp"
#include "agebias/harness.hpp"

namespace {

using namespace agebias;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitFailed = 3;

struct RunFlags {
  std::string config_path;
  std::string model;
  std::optional<std::uint32_t> m;
  std::string delta;
  std::string loops;
  std::optional<std::uint64_t> t_max;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::string observer;
  std::optional<std::uint64_t> root;
  std::vector<std::uint64_t> schedule;
  std::string law;
  std::optional<double> tolerance;
  std::optional<unsigned> threads;
  std::string csv;
  std::string report;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file");
  cmd->add_option("--model", f.model, "PAM or UAM");
  cmd->add_option("--m", f.m, "edges per new vertex");
  cmd->add_option("--delta", f.delta, "shift, p/q or decimal");
  cmd->add_option("--loops", f.loops, "allowed or vertex_one_only");
  cmd->add_option("--t-max,--t_max", f.t_max, "final time");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--trials", f.trials, "independent trials");
  cmd->add_option("--observer", f.observer, "descendants, matching or independent");
  cmd->add_option("--root", f.root, "root vertex for descendants");
  cmd->add_option("--schedule", f.schedule, "snapshot times")->delimiter(',');
  cmd->add_option("--law", f.law, "auto, beta_mixture, min_uniform, point_mass or none");
  cmd->add_option("--tolerance", f.tolerance, "verdict tolerance");
  cmd->add_option("--threads", f.threads, "worker threads");
  cmd->add_option("--csv", f.csv, "CSV output path (default stdout for simulate)");
  cmd->add_option("--report", f.report, "JSON report path (default stdout for experiment)");
}

ExperimentSpec spec_from_flags(const RunFlags& f) {
  ExperimentSpec spec;
  if (!f.config_path.empty()) {
    spec = parse_config_file(f.config_path);
  } else if (!f.seed) {
    throw ConfigError("--seed is required");
  }
  auto& p = spec.process;
  if (!f.model.empty()) p.model = parse_model(f.model);
  if (f.m) p.m = *f.m;
  if (!f.delta.empty()) p.delta = Delta::parse(f.delta);
  if (f.loops == "allowed") p.loops = LoopRule::kLoopsAllowed;
  else if (f.loops == "vertex_one_only") p.loops = LoopRule::kLoopsOnlyAtVertexOne;
  else if (!f.loops.empty()) throw ConfigError("--loops: expected allowed or vertex_one_only");
  if (f.t_max) p.t_max = *f.t_max;
  if (f.seed) spec.seed = *f.seed;
  if (f.trials) spec.trials = *f.trials;
  if (!f.observer.empty()) spec.observer = parse_observer(f.observer);
  if (f.root) spec.root = *f.root;
  if (!f.schedule.empty()) spec.schedule = f.schedule;
  if (!f.law.empty()) spec.law = parse_law(f.law);
  if (f.tolerance) spec.tolerance = *f.tolerance;
  if (f.threads) spec.threads = *f.threads;
  if (!f.csv.empty()) spec.csv_path = f.csv;
  if (!f.report.empty()) spec.report_path = f.report;
  validate(spec);
  return spec;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

int cmd_simulate(const RunFlags& flags) {
  const ExperimentSpec spec = spec_from_flags(flags);
  const SnapshotSeries series = simulate(spec);
  std::ostringstream out;
  write_csv(series, out);
  write_output(spec.csv_path, out.str());
  return kExitOk;
}

int cmd_experiment(const RunFlags& flags, bool timing) {
  const ExperimentSpec spec = spec_from_flags(flags);
  ExperimentReport report = run_experiment(spec);
  if (!timing) report.wall_clock_seconds.reset();
  write_output(spec.report_path, report_to_json(report));
  std::cerr << (report.passed() ? "experiment: pass" : "experiment: FAIL") << "\n";
  return report.passed() ? kExitOk : kExitFailed;
}

struct ConstantsFlags {
  std::string kind = "all";
  std::vector<std::uint32_t> m;
  std::string delta = "0";
};

void print_constant(const LimitConstant& c, const std::string& delta) {
  std::cout << to_string(c.kind) << ',' << c.m << ',' << delta << ',' << format_double(c.value)
            << ',' << format_double(c.width()) << '\n';
}

int cmd_constants(const ConstantsFlags& f) {
  const Delta delta = Delta::parse(f.delta);
  const bool all = f.kind == "all";
  if (!all && f.kind != "rho_pam" && f.kind != "r_uam" && f.kind != "w") {
    throw ConfigError("--kind: expected all, rho_pam, r_uam or w");
  }
  auto ms = [&](std::vector<std::uint32_t> fallback) { return f.m.empty() ? fallback : f.m; };
  std::cout << "kind,m,delta,value,width\n";
  if (all || f.kind == "rho_pam") {
    for (auto m : ms({1, 2, 5, 10, 20, 70})) {
      if (!delta.at_least_minus(m)) throw ConfigError("--delta: below -m for m=" + std::to_string(m));
      print_constant(rho_pam_matching(m, delta.to_double()), delta.to_string());
    }
  }
  if (all || f.kind == "r_uam") {
    for (auto m : ms({1, 2, 5, 10, 20, 35})) print_constant(r_uam_matching(m), "inf");
  }
  if (all || f.kind == "w") {
    for (auto m : ms({1, 2, 5, 10})) print_constant(w_independent(m), "-");
  }
  return kExitOk;
}

int report_suite(const SuiteResult& suite) {
  std::cout << suite.name << ": " << suite.cases << " cases, " << suite.failures << " failures\n";
  for (const auto& detail : suite.failure_details) std::cout << "  " << detail << '\n';
  return suite.passed() ? kExitOk : kExitFailed;
}

struct CouplingFlags {
  std::uint32_t m = 2;
  std::string delta = "1/2";
  std::uint64_t t = 500;
  std::uint64_t trials = 1000;
  std::uint64_t root = 2;
  std::uint64_t prefixes = 100;
  std::optional<std::uint64_t> seed;
};

int cmd_verify_coupling(const CouplingFlags& f) {
  if (!f.seed) throw ConfigError("--seed is required");
  if (f.m < 1) throw ConfigError("--m: must be at least 1");
  if (f.trials < 1) throw ConfigError("--trials: must be at least 1");
  if (f.root < 1 || f.root > f.t) throw ConfigError("--r: need 1 <= r <= t");
  const Delta delta = Delta::parse(f.delta);
  if (!delta.at_least_minus(f.m)) throw ConfigError("--delta: below -m");
  if (f.m * f.t < f.m + f.prefixes - 1) throw ConfigError("--t: too short for the prefix sweep");

  std::uint64_t violations = 0;
  std::uint64_t mismatches = 0;
  for (std::uint64_t k = 0; k < f.trials; ++k) {
    const CoupledRun run = make_coupled_run(f.m, delta, f.t, trial_seed(*f.seed, k));
    if (k == 0) mismatches = transition_mismatches(run.fine, f.m, delta, f.prefixes);
    const CouplingCheck check = descendant_coupling_check(run, f.root, f.t);
    if (!check.holds(f.m)) {
      ++violations;
      std::cout << "  trial " << k << ": m*X=" << f.m * check.coarse_x << " < fine X=" << check.fine_x
                << '\n';
    }
  }
  std::cout << "transition: " << f.prefixes << " prefixes, " << mismatches << " nonzero differences\n";
  std::cout << "descendants: " << f.trials - violations << "/" << f.trials << " runs satisfy m*X >= X_fine\n";
  return violations == 0 && mismatches == 0 ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age-biased attachment processes: simulation, constants and exact checks"};
  app.require_subcommand(1);

  RunFlags sim_flags;
  auto* sim = app.add_subcommand("simulate", "one run, snapshot metrics as CSV");
  add_run_flags(sim, sim_flags);

  RunFlags exp_flags;
  bool timing = false;
  auto* exp = app.add_subcommand("experiment", "independent trials with statistics, JSON report");
  add_run_flags(exp, exp_flags);
  exp->add_flag("--timing", timing, "include wall-clock seconds in the report");

  ConstantsFlags const_flags;
  auto* constants = app.add_subcommand("constants", "limit constants as CSV");
  constants->add_option("--kind", const_flags.kind, "all, rho_pam, r_uam or w");
  constants->add_option("--m", const_flags.m, "values of m")->delimiter(',');
  constants->add_option("--delta", const_flags.delta, "shift for rho_pam");

  auto* verify = app.add_subcommand("verify", "exact and coupling checks");
  verify->require_subcommand(1);
  std::uint64_t mart_t = 30;
  unsigned mart_ell = 6;
  auto* martingale = verify->add_subcommand("martingale", "martingale step identity");
  martingale->add_option("--t", mart_t, "largest t");
  martingale->add_option("--ell", mart_ell, "largest moment order");
  unsigned stirling_ell = 10;
  auto* stirling = verify->add_subcommand("stirling", "rising factorial expansion");
  stirling->add_option("--ell", stirling_ell, "largest order");
  std::uint64_t law_t = 6;
  std::uint32_t law_m = 3;
  auto* steplaw = verify->add_subcommand("steplaw", "one-step law against enumeration");
  steplaw->add_option("--t", law_t, "largest t");
  steplaw->add_option("--m", law_m, "largest m");
  CouplingFlags coupling_flags;
  auto* coupling = verify->add_subcommand("coupling", "collapsing coupling checks");
  coupling->add_option("--m", coupling_flags.m, "block size");
  coupling->add_option("--delta", coupling_flags.delta, "shift, p/q or decimal");
  coupling->add_option("--t", coupling_flags.t, "coarse time");
  coupling->add_option("--trials", coupling_flags.trials, "coupled runs");
  coupling->add_option("--r", coupling_flags.root, "coarse root");
  coupling->add_option("--prefixes", coupling_flags.prefixes, "fine prefixes for the transition check");
  coupling->add_option("--seed", coupling_flags.seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sim) return cmd_simulate(sim_flags);
    if (*exp) return cmd_experiment(exp_flags, timing);
    if (*constants) return cmd_constants(const_flags);
    if (*martingale) return report_suite(run_martingale_suite(mart_t, mart_ell));
    if (*stirling) return report_suite(run_stirling_suite(stirling_ell));
    if (*steplaw) return report_suite(run_steplaw_suite(law_t, law_m));
    if (*coupling) return cmd_verify_coupling(coupling_flags);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const TrialError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitOk;
}
