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

#include "agebias/process.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace agebias {
namespace {

constexpr __int128 kMaxTotal = std::numeric_limits<std::int64_t>::max();

std::int64_t checked(__int128 value) {
  if (value > kMaxTotal || value < -kMaxTotal) {
    throw std::overflow_error("attachment weight exceeds 63 bits");
  }
  return static_cast<std::int64_t>(value);
}

// Integer factor applied to every weight so that delta-terms become integral.
// Loops allowed: den*m (the self weight carries i*delta/m). Otherwise: den.
__int128 weight_scale(const ProcessConfig& c) {
  const __int128 den = c.delta.den;
  return c.loops == LoopRule::kLoopsAllowed ? den * c.m : den;
}

__int128 weight_offset(const ProcessConfig& c) {
  const __int128 num = c.delta.num;
  return c.loops == LoopRule::kLoopsAllowed ? num * c.m : num;
}

__int128 self_weight(const ProcessConfig& c, std::uint64_t self_degree, std::uint32_t i) {
  return static_cast<__int128>(c.delta.den) * c.m * (static_cast<__int128>(self_degree) + 1) +
         static_cast<__int128>(i) * c.delta.num;
}

}  // namespace

void validate(const ProcessConfig& config) {
  if (config.m < 1) throw ConfigError("m: must be at least 1");
  if (config.t_max < 1) throw ConfigError("t_max: must be at least 1");
  if (config.model == Model::kPam && !config.delta.at_least_minus(config.m)) {
    throw ConfigError("delta: delta below -m (" + config.delta.to_string() + " < -" +
                      std::to_string(config.m) + ")");
  }
}

std::string to_string(Model model) { return model == Model::kPam ? "PAM" : "UAM"; }

Model parse_model(std::string_view text) {
  if (text == "PAM" || text == "pam") return Model::kPam;
  if (text == "UAM" || text == "uam") return Model::kUam;
  throw ConfigError("model: expected PAM or UAM, got '" + std::string(text) + "'");
}

std::uint32_t StepOutcome::loop_count() const {
  std::uint32_t n = 0;
  for (const auto& s : selections) n += s.is_loop ? 1 : 0;
  return n;
}

double AttachmentDistribution::probability(std::uint64_t x) const {
  const double denom = static_cast<double>(total);
  if (x >= 1 && x <= weights.size()) return static_cast<double>(weights[x - 1]) / denom;
  if (x == weights.size() + 1 && self_weight) return static_cast<double>(*self_weight) / denom;
  return 0.0;
}

AttachmentDistribution attachment_distribution(const ProcessConfig& config,
                                               std::span<const std::uint64_t> degrees,
                                               std::uint64_t self_degree, std::uint32_t i) {
  AttachmentDistribution dist;
  const std::size_t t = degrees.size();
  dist.weights.resize(t);
  if (config.model == Model::kUam) {
    std::fill(dist.weights.begin(), dist.weights.end(), 1);
    dist.total = static_cast<std::int64_t>(t);
    return dist;
  }
  const __int128 scale = weight_scale(config);
  const __int128 offset = weight_offset(config);
  __int128 total = 0;
  for (std::size_t k = 0; k < t; ++k) {
    dist.weights[k] = checked(scale * degrees[k] + offset);
    total += dist.weights[k];
  }
  if (config.loops == LoopRule::kLoopsAllowed) {
    dist.self_weight = checked(self_weight(config, self_degree, i));
    total += *dist.self_weight;
  }
  dist.total = checked(total);
  return dist;
}

ProcessState::ProcessState(const ProcessConfig& config, std::uint64_t seed)
    : config_(config), rng_(seed) {
  validate(config_);
  if (config_.model == Model::kPam) {
    scale_ = weight_scale(config_);
    offset_ = weight_offset(config_);
  }
  outcome_.selections.reserve(config_.m);
}

ProcessState ProcessState::init(const ProcessConfig& config, std::uint64_t seed) {
  ProcessState state(config, seed);
  const std::uint64_t initial = config.model == Model::kPam ? 2ULL * config.m : 0;
  state.t_ = 1;
  state.degree_.push_back(initial);
  state.index_.push_back(initial);
  state.prefix_total_ = initial;
  return state;
}

ProcessState ProcessState::from_degrees(const ProcessConfig& config,
                                        std::vector<std::uint64_t> degrees,
                                        std::uint64_t seed) {
  if (degrees.empty()) throw ConfigError("degrees: need at least one vertex");
  ProcessState state(config, seed);
  const std::uint64_t t = degrees.size();
  const std::uint64_t sum = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
  const std::uint64_t expected =
      config.model == Model::kPam ? 2ULL * config.m * t : 2ULL * config.m * (t - 1);
  if (sum != expected) {
    throw ConfigError("degrees: sum " + std::to_string(sum) + " does not match " +
                      std::to_string(expected));
  }
  state.t_ = t;
  state.degree_ = std::move(degrees);
  for (const auto d : state.degree_) state.index_.push_back(d);
  state.prefix_total_ = sum;
  return state;
}

void ProcessState::reserve(std::uint64_t t_max) {
  degree_.reserve(t_max);
  if (config_.model == Model::kPam) index_.reserve(t_max);
}

void ProcessState::begin_step() {
  if (in_step_) throw std::logic_error("begin_step: step already in progress");
  in_step_ = true;
  substep_ = 0;
  self_degree_ = 0;
  outcome_.new_vertex = t_ + 1;
  outcome_.selections.clear();
}

Selection ProcessState::draw_selection() {
  if (!in_step_ || substep_ >= config_.m) {
    throw std::logic_error("draw_selection: no sub-step pending");
  }
  const std::uint32_t i = ++substep_;
  Selection sel;
  if (config_.model == Model::kUam) {
    sel.target = rng_.below(t_) + 1;
  } else {
    const __int128 total_old = scale_ * prefix_total_ + offset_ * t_;
    __int128 total = total_old;
    if (config_.loops == LoopRule::kLoopsAllowed) total += self_weight(config_, self_degree_, i);
    const auto u = static_cast<__int128>(rng_.below(static_cast<std::uint64_t>(checked(total))));
    if (u < total_old) {
      sel.target = index_.find(u, scale_, offset_);
      index_.add(sel.target, 1);
    } else {
      sel.target = t_ + 1;
      sel.is_loop = true;
    }
  }
  if (sel.is_loop) {
    self_degree_ += 2;
  } else {
    ++degree_[sel.target - 1];
    ++prefix_total_;
    ++self_degree_;
  }
  outcome_.selections.push_back(sel);
  return sel;
}

void ProcessState::finish_step() {
  if (!in_step_ || substep_ != config_.m) {
    throw std::logic_error("finish_step: step incomplete");
  }
  in_step_ = false;
  ++t_;
  degree_.push_back(self_degree_);
  if (config_.model == Model::kPam) index_.push_back(self_degree_);
  prefix_total_ += self_degree_;
  self_degree_ = 0;
  substep_ = 0;
}

const StepOutcome& ProcessState::advance_step() {
  begin_step();
  for (std::uint32_t i = 0; i < config_.m; ++i) draw_selection();
  finish_step();
  return outcome_;
}

AttachmentDistribution ProcessState::attachment_distribution() const {
  return agebias::attachment_distribution(config_, degree_, in_step_ ? self_degree_ : 0,
                                          in_step_ ? substep_ + 1 : 1);
}

void run(ProcessState& state, std::uint64_t t_max, std::span<StepObserver* const> observers) {
  if (t_max < state.t()) {
    throw ConfigError("t_max: " + std::to_string(t_max) + " is below current t " +
                      std::to_string(state.t()));
  }
  state.reserve(t_max);
  while (state.t() < t_max) {
    const StepOutcome& outcome = state.advance_step();
    for (auto* observer : observers) observer->observe(outcome);
  }
}

}  // namespace agebias
