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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "agebias/harness.hpp"
#include "agebias/stats.hpp"

using namespace agebias;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config parsing") {
  const auto spec = parse_config(R"({"model": "PAM", "m": 2, "delta": "1/2", "t_max": 500,
      "seed": 9, "trials": 3, "observer": "matching", "root": 1, "schedule": [1, 10, 500],
      "law": "none", "tolerance": 0.02})");
  CHECK(spec.process.m == 2);
  CHECK(spec.process.delta == Delta(1, 2));
  CHECK(spec.process.t_max == 500);
  CHECK(spec.seed == 9);
  CHECK(spec.trials == 3);
  CHECK(spec.observer == ObserverKind::kMatching);
  CHECK(spec.schedule == std::vector<std::uint64_t>{1, 10, 500});
  CHECK(spec.law == LawKind::kNone);
  CHECK(spec.tolerance == 0.02);
  CHECK(parse_config(R"({"m": 1, "delta": 0.25, "t_max": 5, "seed": 1, "law": "none"})")
            .process.delta == Delta(1, 4));
  CHECK(parse_config(R"({"m": 1, "delta": -1, "t_max": 5, "seed": 1, "law": "none"})")
            .process.delta == Delta(-1));
}

TEST_CASE("config round trip") {
  ExperimentSpec spec;
  spec.process.model = Model::kUam;
  spec.process.m = 3;
  spec.process.t_max = 1000;
  spec.seed = 123456789012345ULL;
  spec.trials = 17;
  spec.observer = ObserverKind::kIndependent;
  spec.root = 4;
  spec.schedule = {2, 20, 200};
  spec.law = LawKind::kNone;
  spec.tolerance = 0.0125;
  spec.threads = 2;
  spec.csv_path = "out.csv";
  spec.report_path = "out.json";
  CHECK(parse_config(emit_config(spec)) == spec);
  ExperimentSpec other;
  other.process.delta = Delta(-7, 3);
  other.process.m = 3;
  other.process.t_max = 10;
  other.root = 2;
  other.process.loops = LoopRule::kLoopsOnlyAtVertexOne;
  CHECK(parse_config(emit_config(other)) == other);
}

TEST_CASE("config errors name the field") {
  CHECK(error_of(R"({"m": 1, "t_max": 5, "seed": 1, "observer": "cliques"})").find(
            "descendants, matching, independent") != std::string::npos);
  CHECK(error_of(R"({"m": 1, "t_max": 5, "seed": 1, "observer": "cliques"})").find(
            "config.observer") != std::string::npos);
  CHECK(error_of(R"({"m": 1, "t_max": 5})").find("config.seed") != std::string::npos);
  CHECK(error_of(R"({"m": 0, "t_max": 5, "seed": 1})").find("config.m") != std::string::npos);
  CHECK(error_of(R"({"m": 1, "delta": "x", "t_max": 5, "seed": 1})").find("config.delta") !=
        std::string::npos);
  CHECK(error_of(R"({"m": 1, "t_max": 5, "seed": 1, "schedule": [3, 2]})").find(
            "config.schedule") != std::string::npos);
  CHECK(error_of(R"({"m": 1, "t_max": 5, "seed": 1, "tolerance": 0})").find("config.tolerance") !=
        std::string::npos);
  CHECK(error_of("{not json").find("malformed") != std::string::npos);
  CHECK(error_of(R"({"m": 1, "delta": "-3/2", "t_max": 5, "seed": 1})").find("delta") !=
        std::string::npos);
}

TEST_CASE("degenerate descendant configuration is rejected") {
  // PAM m = 1, delta = -1: the root-1 fraction has no limit law to test.
  CHECK_FALSE(error_of(R"({"m": 1, "delta": "-1", "t_max": 100, "seed": 1, "root": 1})").empty());
  CHECK(error_of(R"({"m": 1, "delta": "-1", "t_max": 100, "seed": 1, "root": 1, "law": "none"})")
            .empty());
}

TEST_CASE("trial seeds") {
  // Frozen from an independent big-integer implementation.
  CHECK(trial_seed(3, 0) == 13757245211066428519ULL);
  CHECK(trial_seed(3, 1) == 4048727598324417001ULL);
  CHECK(trial_seed(3, 2) == 8043341295829897994ULL);
}

TEST_CASE("worker count does not change samples") {
  ExperimentSpec spec;
  spec.process.m = 2;
  spec.process.delta = Delta(1, 2);
  spec.process.t_max = 3000;
  spec.trials = 9;
  spec.seed = 5;
  spec.root = 3;
  for (auto observer : {ObserverKind::kDescendants, ObserverKind::kMatching, ObserverKind::kIndependent}) {
    spec.observer = observer;
    const auto one = run_trials(spec, 1);
    const auto four = run_trials(spec, 4);
    CHECK(one == four);
    CHECK(one.size() == 9);
    CHECK(run_single_trial(spec, trial_seed(5, 7)) == one[7]);
  }
}

TEST_CASE("UAM fractions lie in (0, 1]") {
  ExperimentSpec spec;
  spec.process.model = Model::kUam;
  spec.process.m = 1;
  spec.process.t_max = 100000;
  spec.root = 2;
  spec.trials = 2000;
  spec.seed = 2024;
  const auto samples = run_trials(spec, 1);
  CHECK(samples.size() == 2000);
  CHECK(std::all_of(samples.begin(), samples.end(), [](double p) { return p > 0.0 && p <= 1.0; }));
}

TEST_CASE("report verdicts are recomputable") {
  ExperimentSpec spec;
  spec.process.m = 1;
  spec.process.t_max = 2000;
  spec.root = 2;
  spec.trials = 200;
  spec.seed = 77;
  auto report = run_experiment(spec);
  CHECK(report.samples.size() == 200);
  CHECK(report.seeds.size() == 200);
  CHECK(report.seeds[0] == trial_seed(77, 0));
  REQUIRE(report.ks);
  REQUIRE(report.theoretical_moments.size() == 3);
  CHECK(report.theoretical_moments[0] == doctest::Approx(4.0 / 15));
  const auto law = resolve_law(spec);
  REQUIRE(law);
  CHECK(*report.ks == ks_statistic(report.samples, [&](double x) { return mixture_cdf(*law, x); }));
  auto copy = report;
  copy.ks_pass.reset();
  copy.mean_pass.reset();
  compute_verdicts(copy);
  CHECK(copy.ks_pass == report.ks_pass);
  CHECK(copy.mean_pass == report.mean_pass);

  report.wall_clock_seconds.reset();
  const auto j = nlohmann::json::parse(report_to_json(report));
  CHECK(j["samples"].size() == 200);
  CHECK(j["config"]["seed"] == 77);
  CHECK(j["verdicts"]["pass"] == report.passed());
  CHECK_FALSE(j.contains("wall_clock_seconds"));
}

TEST_CASE("targets and point masses") {
  ExperimentSpec spec;
  spec.process.m = 2;
  spec.process.t_max = 100;
  spec.observer = ObserverKind::kMatching;
  CHECK(*target_constant(spec) == doctest::Approx(1 - rho_pam_matching(2, 0.0).value));
  spec.observer = ObserverKind::kIndependent;
  CHECK(*target_constant(spec) == doctest::Approx(w_independent(2).value));
  spec.process.model = Model::kUam;
  spec.observer = ObserverKind::kMatching;
  CHECK(*target_constant(spec) == doctest::Approx(r_uam_matching(2).value));
  spec.observer = ObserverKind::kDescendants;
  CHECK_FALSE(target_constant(spec));
  CHECK(resolve_law(spec)->is_point_mass());
  spec.law = LawKind::kMinUniform;
  CHECK_THROWS_AS(resolve_law(spec), ConfigError);
}

TEST_CASE("CSV output") {
  ExperimentSpec spec;
  spec.process.m = 2;
  spec.process.delta = Delta(1, 2);
  spec.process.t_max = 300;
  spec.seed = 11;
  spec.root = 2;
  std::ostringstream a, b;
  write_csv(simulate(spec), a);
  write_csv(simulate(spec), b);
  CHECK(a.str() == b.str());
  const std::string text = a.str();
  CHECK(text.rfind("t,metric,value\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  const std::vector<std::string> vocab{"p_x", "p_y", "p", "x", "matched_frac", "i", "z", "w"};
  std::uint64_t last_t = 0;
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const auto t = std::stoull(line.substr(0, c1));
    const auto metric = line.substr(c1 + 1, c2 - c1 - 1);
    CHECK(std::find(vocab.begin(), vocab.end(), metric) != vocab.end());
    CHECK(t >= last_t);
    CHECK(std::isfinite(std::stod(line.substr(c2 + 1))));
    last_t = t;
    ++rows;
  }
  CHECK(last_t == 300);
  CHECK(rows == 8 * static_cast<int>(geometric_schedule(300).size()));
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3, 0.25, 1e-17, 123456.789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

}
