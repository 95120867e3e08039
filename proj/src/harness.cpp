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

#include "agebias/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "agebias/stats.hpp"

namespace agebias {
namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ConfigError("config." + field + ": " + what);
}

std::uint64_t get_uint(const json& j, const std::string& field, std::uint64_t fallback,
                       bool required, std::uint64_t min_value) {
  if (!j.contains(field)) {
    if (required) field_error(field, "missing");
    return fallback;
  }
  const json& v = j.at(field);
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 0 &&
                                 !v.is_number_unsigned())) {
    field_error(field, "expected a non-negative integer");
  }
  const auto value = v.get<std::uint64_t>();
  if (value < min_value) field_error(field, "must be at least " + std::to_string(min_value));
  return value;
}

std::string get_string(const json& j, const std::string& field, const std::string& fallback) {
  if (!j.contains(field)) return fallback;
  if (!j.at(field).is_string()) field_error(field, "expected a string");
  return j.at(field).get<std::string>();
}

template <typename F>
auto rethrow_as_field(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    field_error(field, e.what());
  }
}

const std::vector<unsigned> kMomentOrders{1, 2, 3};

}  // namespace

std::string to_string(ObserverKind kind) {
  switch (kind) {
    case ObserverKind::kDescendants: return "descendants";
    case ObserverKind::kMatching: return "matching";
    case ObserverKind::kIndependent: return "independent";
  }
  return "unknown";
}

ObserverKind parse_observer(std::string_view text) {
  if (text == "descendants") return ObserverKind::kDescendants;
  if (text == "matching") return ObserverKind::kMatching;
  if (text == "independent") return ObserverKind::kIndependent;
  throw ConfigError("unknown observer '" + std::string(text) +
                    "' (valid: descendants, matching, independent)");
}

std::string to_string(LawKind kind) {
  switch (kind) {
    case LawKind::kAuto: return "auto";
    case LawKind::kBetaMixture: return "beta_mixture";
    case LawKind::kMinUniform: return "min_uniform";
    case LawKind::kPointMass: return "point_mass";
    case LawKind::kNone: return "none";
  }
  return "unknown";
}

LawKind parse_law(std::string_view text) {
  for (auto kind : {LawKind::kAuto, LawKind::kBetaMixture, LawKind::kMinUniform,
                    LawKind::kPointMass, LawKind::kNone}) {
    if (text == to_string(kind)) return kind;
  }
  throw ConfigError("unknown law '" + std::string(text) +
                    "' (valid: auto, beta_mixture, min_uniform, point_mass, none)");
}

void validate(const ExperimentSpec& spec) {
  try {
    validate(spec.process);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config.") + e.what());
  }
  if (spec.trials < 1) field_error("trials", "must be at least 1");
  if (spec.root < 1) field_error("root", "must be at least 1");
  if (spec.process.t_max < spec.root) field_error("t_max", "must be at least root");
  if (!(spec.tolerance > 0.0)) field_error("tolerance", "must be positive");
  for (std::size_t k = 0; k < spec.schedule.size(); ++k) {
    if (spec.schedule[k] < 1 || spec.schedule[k] > spec.process.t_max ||
        (k > 0 && spec.schedule[k] <= spec.schedule[k - 1])) {
      field_error("schedule", "times must be strictly increasing within [1, t_max]");
    }
  }
  if (spec.observer == ObserverKind::kDescendants) {
    rethrow_as_field("law", [&] { resolve_law(spec); return 0; });
  }
}

ExperimentSpec parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  ExperimentSpec spec;
  spec.process.model = rethrow_as_field("model", [&] { return parse_model(get_string(j, "model", "PAM")); });
  spec.process.m = static_cast<std::uint32_t>(get_uint(j, "m", 1, true, 1));
  if (j.contains("delta")) {
    const json& d = j.at("delta");
    std::string text;
    if (d.is_string()) {
      text = d.get<std::string>();
    } else if (d.is_number_integer()) {
      text = std::to_string(d.get<std::int64_t>());
    } else if (d.is_number_float()) {
      text = format_double(d.get<double>());
    } else {
      field_error("delta", "expected \"p/q\" string or number");
    }
    spec.process.delta = rethrow_as_field("delta", [&] { return Delta::parse(text); });
  }
  const std::string loops = get_string(j, "loops", "allowed");
  if (loops == "allowed") {
    spec.process.loops = LoopRule::kLoopsAllowed;
  } else if (loops == "vertex_one_only") {
    spec.process.loops = LoopRule::kLoopsOnlyAtVertexOne;
  } else {
    field_error("loops", "expected 'allowed' or 'vertex_one_only'");
  }
  spec.process.t_max = get_uint(j, "t_max", 1, true, 1);
  spec.seed = get_uint(j, "seed", 0, true, 0);
  spec.trials = get_uint(j, "trials", 1, false, 1);
  spec.observer = rethrow_as_field("observer", [&] {
    return parse_observer(get_string(j, "observer", "descendants"));
  });
  spec.root = get_uint(j, "root", 1, false, 1);
  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    if (s.is_string()) {
      if (s.get<std::string>() != "geometric") field_error("schedule", "expected 'geometric' or a list");
    } else if (s.is_array()) {
      for (const auto& v : s) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() > 0)) {
          field_error("schedule", "expected positive integers");
        }
        spec.schedule.push_back(v.get<std::uint64_t>());
      }
    } else {
      field_error("schedule", "expected 'geometric' or a list");
    }
  }
  spec.law = rethrow_as_field("law", [&] { return parse_law(get_string(j, "law", "auto")); });
  if (j.contains("tolerance")) {
    if (!j.at("tolerance").is_number()) field_error("tolerance", "expected a number");
    spec.tolerance = j.at("tolerance").get<double>();
  }
  spec.threads = static_cast<unsigned>(get_uint(j, "threads", 1, false, 1));
  if (j.contains("output")) {
    const json& out = j.at("output");
    if (!out.is_object()) field_error("output", "expected an object");
    spec.csv_path = get_string(out, "csv", "");
    spec.report_path = get_string(out, "report", "");
  }
  validate(spec);
  return spec;
}

ExperimentSpec parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string emit_config(const ExperimentSpec& spec) {
  json j;
  j["model"] = to_string(spec.process.model);
  j["m"] = spec.process.m;
  j["delta"] = spec.process.delta.to_string();
  j["loops"] = spec.process.loops == LoopRule::kLoopsAllowed ? "allowed" : "vertex_one_only";
  j["t_max"] = spec.process.t_max;
  j["seed"] = spec.seed;
  j["trials"] = spec.trials;
  j["observer"] = to_string(spec.observer);
  j["root"] = spec.root;
  if (spec.schedule.empty()) {
    j["schedule"] = "geometric";
  } else {
    j["schedule"] = spec.schedule;
  }
  j["law"] = to_string(spec.law);
  j["tolerance"] = spec.tolerance;
  j["threads"] = spec.threads;
  if (!spec.csv_path.empty() || !spec.report_path.empty()) {
    j["output"] = {{"csv", spec.csv_path}, {"report", spec.report_path}};
  }
  return j.dump(2) + "\n";
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
  return splitmix64(master_seed ^ (kGoldenGamma * (trial_index + 1)));
}

double run_single_trial(const ExperimentSpec& spec, std::uint64_t seed) {
  auto state = ProcessState::init(spec.process, seed);
  switch (spec.observer) {
    case ObserverKind::kDescendants: {
      DescendantTracker tracker(spec.process, spec.root);
      StepObserver* obs[] = {&tracker};
      run(state, spec.process.t_max, obs);
      return tracker.p_x();
    }
    case ObserverKind::kMatching: {
      MatchingTracker tracker;
      StepObserver* obs[] = {&tracker};
      run(state, spec.process.t_max, obs);
      return 2.0 * static_cast<double>(tracker.matched_pairs()) / static_cast<double>(tracker.t());
    }
    case ObserverKind::kIndependent: {
      IndependentSetTracker tracker(spec.process);
      StepObserver* obs[] = {&tracker};
      run(state, spec.process.t_max, obs);
      return tracker.i_frac();
    }
  }
  throw std::logic_error("unknown observer");
}

TrialError::TrialError(std::uint64_t index_, std::uint64_t seed_, const std::string& what)
    : std::runtime_error("trial " + std::to_string(index_) + " (seed " + std::to_string(seed_) +
                         ") failed: " + what),
      index(index_),
      seed(seed_) {}

std::vector<double> run_trials(const ExperimentSpec& spec, unsigned threads) {
  validate(spec);
  const std::uint64_t n = spec.trials;
  std::vector<double> samples(n, 0.0);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::optional<TrialError> first_error;

  auto worker = [&] {
    while (!failed.load()) {
      const std::uint64_t k = next.fetch_add(1);
      if (k >= n) return;
      const std::uint64_t seed = trial_seed(spec.seed, k);
      try {
        samples[k] = run_single_trial(spec, seed);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (!first_error || k < first_error->index) first_error.emplace(k, seed, e.what());
        failed = true;
      }
    }
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (first_error) throw *first_error;
  return samples;
}

std::optional<LimitLaw> resolve_law(const ExperimentSpec& spec) {
  if (spec.law == LawKind::kNone || spec.observer != ObserverKind::kDescendants) {
    return std::nullopt;
  }
  const auto& p = spec.process;
  const double delta = p.delta.to_double();
  switch (spec.law) {
    case LawKind::kPointMass:
      return LimitLaw{};
    case LawKind::kBetaMixture:
      if (p.model != Model::kPam || p.m != 1) throw ConfigError("beta_mixture needs PAM with m = 1");
      break;
    case LawKind::kMinUniform:
      if (p.model != Model::kUam || p.m != 1) throw ConfigError("min_uniform needs UAM with m = 1");
      break;
    default:
      break;
  }
  return descendant_limit_law(p.model, p.m, spec.root, delta);
}

std::optional<double> target_constant(const ExperimentSpec& spec) {
  const auto& p = spec.process;
  switch (spec.observer) {
    case ObserverKind::kMatching:
      if (p.model == Model::kUam) return r_uam_matching(p.m).value;
      return 1.0 - rho_pam_matching(p.m, p.delta.to_double()).value;
    case ObserverKind::kIndependent:
      return w_independent(p.m).value;
    case ObserverKind::kDescendants:
      return std::nullopt;
  }
  return std::nullopt;
}

bool ExperimentReport::passed() const {
  for (const auto& v : {ks_pass, mean_pass, target_pass}) {
    if (v && !*v) return false;
  }
  return true;
}

void compute_verdicts(ExperimentReport& report) {
  const auto& spec = report.spec;
  const double n = static_cast<double>(report.samples.size());
  const double mean = sample_mean(report.samples);
  report.ks_pass.reset();
  report.mean_pass.reset();
  report.target_pass.reset();
  if (const auto law = resolve_law(spec)) {
    if (law->is_point_mass()) {
      report.mean_pass = 1.0 - mean <= spec.tolerance;
    } else {
      report.ks_pass = report.ks && *report.ks <= spec.tolerance;
      const double mu1 = mixture_moment(*law, 1);
      const double sigma = std::sqrt(std::max(0.0, mixture_moment(*law, 2) - mu1 * mu1));
      report.mean_pass = std::fabs(mean - mu1) <= 3.0 * sigma / std::sqrt(n);
    }
  }
  if (report.target) {
    // Matching under PAM has only a lower bound on the matched fraction.
    const bool one_sided =
        spec.observer == ObserverKind::kMatching && spec.process.model == Model::kPam;
    const double gap = *report.target - mean;
    report.target_pass = one_sided ? gap <= spec.tolerance : std::fabs(gap) <= spec.tolerance;
  }
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.spec = spec;
  report.samples = run_trials(spec, spec.threads);
  report.seeds.reserve(spec.trials);
  for (std::uint64_t k = 0; k < spec.trials; ++k) report.seeds.push_back(trial_seed(spec.seed, k));
  report.empirical_moments = empirical_moments(report.samples, kMomentOrders);
  if (const auto law = resolve_law(spec)) {
    report.ks = ks_statistic(report.samples, [&](double x) { return mixture_cdf(*law, x); });
    for (const unsigned ell : kMomentOrders) report.theoretical_moments.push_back(mixture_moment(*law, ell));
  }
  report.target = target_constant(spec);
  compute_verdicts(report);
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_to_json(const ExperimentReport& report) {
  json j;
  j["config"] = json::parse(emit_config(report.spec));
  j["seeds"] = report.seeds;
  j["samples"] = report.samples;
  j["ks"] = report.ks ? json(*report.ks) : json(nullptr);
  j["empirical_moments"] = report.empirical_moments;
  j["theoretical_moments"] = report.theoretical_moments;
  j["target_constant"] = report.target ? json(*report.target) : json(nullptr);
  auto verdict = [](const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); };
  j["verdicts"] = {{"ks", verdict(report.ks_pass)},
                   {"mean", verdict(report.mean_pass)},
                   {"target", verdict(report.target_pass)},
                   {"pass", report.passed()}};
  if (report.wall_clock_seconds) j["wall_clock_seconds"] = *report.wall_clock_seconds;
  return j.dump(2) + "\n";
}

SnapshotSeries simulate(const ExperimentSpec& spec) {
  validate(spec);
  SnapshotSeries series;
  series.schedule = spec.schedule.empty() ? geometric_schedule(spec.process.t_max) : spec.schedule;
  auto state = ProcessState::init(spec.process, spec.seed);
  DescendantTracker descendants(spec.process, spec.root);
  MatchingTracker matching;
  IndependentSetTracker independent(spec.process);
  SnapshotObserver snapshots(series, {&descendants, &matching, &independent}, state.t());
  StepObserver* observers[] = {&descendants, &matching, &independent, &snapshots};
  run(state, spec.process.t_max, observers);
  return series;
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

void write_csv(const SnapshotSeries& series, std::ostream& out) {
  out << "t,metric,value\n";
  for (const auto& row : series.rows) {
    out << row.t << ',' << row.metric << ',' << format_double(row.value) << '\n';
  }
}

}  // namespace agebias
