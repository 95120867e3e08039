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

#ifndef AGEBIAS_PROCESS_HPP_
#define AGEBIAS_PROCESS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agebias/degree_index.hpp"
#include "agebias/delta.hpp"
#include "agebias/rng.hpp"

namespace agebias {

enum class Model { kPam, kUam };

enum class LoopRule {
  kLoopsAllowed,
  // The arriving vertex never selects itself; vertex 1 keeps its m loops.
  kLoopsOnlyAtVertexOne,
};

struct ProcessConfig {
  Model model = Model::kPam;
  std::uint32_t m = 1;
  Delta delta;  // PAM only
  LoopRule loops = LoopRule::kLoopsAllowed;  // PAM only
  std::uint64_t t_max = 1;

  friend bool operator==(const ProcessConfig&, const ProcessConfig&) = default;
};

// Throws ConfigError for m < 1, t_max < 1, or (PAM) delta < -m.
void validate(const ProcessConfig& config);

std::string to_string(Model model);
Model parse_model(std::string_view text);

struct Selection {
  std::uint64_t target = 0;
  bool is_loop = false;

  friend bool operator==(const Selection&, const Selection&) = default;
};

/// The m ordered choices made by one arriving vertex.
struct StepOutcome {
  std::uint64_t new_vertex = 0;
  std::vector<Selection> selections;

  std::uint32_t loop_count() const;
  friend bool operator==(const StepOutcome&, const StepOutcome&) = default;
};

/// Exact law of one sub-step selection as integer weights over a common
/// total. Entry k-1 of `weights` belongs to vertex k; the arriving vertex has
/// `self_weight` when loops are possible.
struct AttachmentDistribution {
  std::vector<std::int64_t> weights;
  std::optional<std::int64_t> self_weight;
  std::int64_t total = 0;

  // x in [1, t] or x = t + 1 for the self entry.
  double probability(std::uint64_t x) const;
};

/// Law of the i-th selection (1-based) of vertex t+1, where `degrees` holds
/// d_{t,i-1} for vertices 1..t and `self_degree` the degree that vertex t+1
/// has accumulated from its first i-1 selections.
AttachmentDistribution attachment_distribution(const ProcessConfig& config,
                                               std::span<const std::uint64_t> degrees,
                                               std::uint64_t self_degree, std::uint32_t i);

/// State of a delta-PAM or UAM graph process: vertex count, per-vertex
/// degrees, the sampling index and the random stream. A step is made of m
/// sub-steps; advance_step() runs a whole step, while begin_step(),
/// draw_selection() and finish_step() expose the sub-steps.
class ProcessState {
 public:
  static ProcessState init(const ProcessConfig& config, std::uint64_t seed);

  // Completed-step state with the given degrees of vertices 1..t.
  static ProcessState from_degrees(const ProcessConfig& config,
                                   std::vector<std::uint64_t> degrees, std::uint64_t seed);

  const StepOutcome& advance_step();

  void begin_step();
  Selection draw_selection();
  void finish_step();

  // Law of the next draw_selection(); valid between begin_step() and
  // finish_step() (and, outside a step, for the first sub-step of the next one).
  AttachmentDistribution attachment_distribution() const;

  const ProcessConfig& config() const { return config_; }
  std::uint64_t t() const { return t_; }
  // Sub-selections already drawn in the current step.
  std::uint32_t substep() const { return substep_; }
  bool in_step() const { return in_step_; }
  std::uint64_t degree(std::uint64_t x) const { return degree_[x - 1]; }
  std::span<const std::uint64_t> degrees() const { return degree_; }
  std::uint64_t self_degree() const { return self_degree_; }
  std::uint64_t total_degree() const { return prefix_total_ + self_degree_; }
  const StepOutcome& last_outcome() const { return outcome_; }

  void reserve(std::uint64_t t_max);

 private:
  ProcessState(const ProcessConfig& config, std::uint64_t seed);

  ProcessConfig config_;
  std::uint64_t t_ = 0;
  std::vector<std::uint64_t> degree_;
  DegreeIndex index_;
  std::uint64_t prefix_total_ = 0;  // degree sum over [t]
  std::uint64_t self_degree_ = 0;
  std::uint32_t substep_ = 0;
  bool in_step_ = false;
  StepOutcome outcome_;
  Xoshiro256pp rng_;
  // Scaled weight of vertex x in [t] is scale_ * d(x) + offset_.
  __int128 scale_ = 1;
  __int128 offset_ = 0;
};

class StepObserver {
 public:
  virtual ~StepObserver() = default;
  virtual void observe(const StepOutcome& outcome) = 0;
};

// Advances `state` until t == t_max, notifying every observer after each step.
void run(ProcessState& state, std::uint64_t t_max, std::span<StepObserver* const> observers);

}  // namespace agebias

#endif  // AGEBIAS_PROCESS_HPP_
