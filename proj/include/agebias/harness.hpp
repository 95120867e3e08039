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

#ifndef AGEBIAS_HARNESS_HPP_
#define AGEBIAS_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "agebias/analytics.hpp"
#include "agebias/observers.hpp"
#include "agebias/process.hpp"

namespace agebias {

enum class ObserverKind { kDescendants, kMatching, kIndependent };

std::string to_string(ObserverKind kind);
ObserverKind parse_observer(std::string_view text);

enum class LawKind { kAuto, kBetaMixture, kMinUniform, kPointMass, kNone };

std::string to_string(LawKind kind);
LawKind parse_law(std::string_view text);

struct ExperimentSpec {
  ProcessConfig process;
  ObserverKind observer = ObserverKind::kDescendants;
  std::uint64_t root = 1;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  // Empty means the default geometric schedule.
  std::vector<std::uint64_t> schedule;
  LawKind law = LawKind::kAuto;
  double tolerance = 0.05;
  unsigned threads = 1;
  std::string csv_path;
  std::string report_path;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

void validate(const ExperimentSpec& spec);

// Throws ConfigError naming the offending field, e.g. "config.m: ...".
ExperimentSpec parse_config(const std::string& json_text);
ExperimentSpec parse_config_file(const std::string& path);
std::string emit_config(const ExperimentSpec& spec);

// SplitMix64(master ^ golden_gamma * (index + 1)).
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

// The observer's terminal fraction: p_x, matched_frac or i.
double run_single_trial(const ExperimentSpec& spec, std::uint64_t seed);

/// Runs spec.trials independent trials on up to `threads` workers. Sample k
/// always comes from trial k, so the result does not depend on scheduling.
std::vector<double> run_trials(const ExperimentSpec& spec, unsigned threads);

// Raised when one trial fails; names the trial index and its seed.
class TrialError : public std::runtime_error {
 public:
  TrialError(std::uint64_t index, std::uint64_t seed, const std::string& what);
  std::uint64_t index;
  std::uint64_t seed;
};

// The law a descendant experiment is judged against; nullopt for kNone or
// non-descendant observers.
std::optional<LimitLaw> resolve_law(const ExperimentSpec& spec);

// Limit constant for matching (matched fraction) or independent-set runs.
std::optional<double> target_constant(const ExperimentSpec& spec);

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<std::uint64_t> seeds;
  std::vector<double> samples;
  std::optional<double> ks;
  std::vector<double> empirical_moments;    // l = 1, 2, 3
  std::vector<double> theoretical_moments;  // l = 1, 2, 3 when a law applies
  std::optional<double> target;
  std::optional<bool> ks_pass;
  std::optional<bool> mean_pass;
  std::optional<bool> target_pass;
  std::optional<double> wall_clock_seconds;

  bool passed() const;
};

// Verdicts from stored numbers only; the same function the report uses.
void compute_verdicts(ExperimentReport& report);

ExperimentReport run_experiment(const ExperimentSpec& spec);

// wall_clock_seconds is written only when present.
std::string report_to_json(const ExperimentReport& report);

/// One run with all trackers attached; snapshots follow spec.schedule.
SnapshotSeries simulate(const ExperimentSpec& spec);

// CSV with header "t,metric,value" and LF line endings.
void write_csv(const SnapshotSeries& series, std::ostream& out);

// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace agebias

#endif  // AGEBIAS_HARNESS_HPP_
