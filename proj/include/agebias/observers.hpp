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

#ifndef AGEBIAS_OBSERVERS_HPP_
#define AGEBIAS_OBSERVERS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "agebias/process.hpp"

namespace agebias {

struct MetricRow {
  std::uint64_t t = 0;
  std::string metric;
  double value = 0.0;

  friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

/// A step observer that also reports named fractions for snapshots.
class Tracker : public StepObserver {
 public:
  virtual void append_metrics(std::uint64_t t, std::vector<MetricRow>& rows) const = 0;
};

// How the root of a descendant tree formed its own edges.
enum class RootStart {
  kPending,   // root not yet born
  kLoop,      // first selection was a loop (gamma = 0)
  kAttached,  // first selection went to an older vertex (gamma = -1)
};

/// Descendant tree of a fixed root r: a vertex joins iff one of its non-loop
/// selections hits a current member. Tracks X (members) and Y (their total
/// degree). Must observe the process from t = 1.
class DescendantTracker final : public Tracker {
 public:
  DescendantTracker(const ProcessConfig& config, std::uint64_t root);

  void observe(const StepOutcome& outcome) override;
  void append_metrics(std::uint64_t t, std::vector<MetricRow>& rows) const override;

  std::uint64_t root() const { return root_; }
  std::uint64_t x() const { return x_; }
  std::uint64_t y() const { return y_; }
  RootStart root_start() const { return start_; }
  std::uint32_t root_loops() const { return root_loops_; }
  std::uint64_t t() const { return t_; }
  bool is_member(std::uint64_t v) const { return v <= member_.size() && member_[v - 1]; }

  double p_x() const;
  double p_y() const;
  // (2m p_Y + delta p_X) / (2m + delta); p_X under UAM.
  double p() const;

 private:
  ProcessConfig config_;
  std::uint64_t root_;
  std::uint64_t t_ = 1;
  std::uint64_t x_ = 0;
  std::uint64_t y_ = 0;
  RootStart start_ = RootStart::kPending;
  std::uint32_t root_loops_ = 0;
  std::vector<std::uint8_t> member_;
};

enum class MatchRule {
  kYoungest,  // match with the largest unmatched target
  kOldest,
};

/// Online greedy matching: vertex t+1 is matched to an unmatched target if it
/// selected one, otherwise it stays unmatched.
class MatchingTracker final : public Tracker {
 public:
  explicit MatchingTracker(MatchRule rule = MatchRule::kYoungest);

  void observe(const StepOutcome& outcome) override;
  void append_metrics(std::uint64_t t, std::vector<MetricRow>& rows) const override;

  std::uint64_t unmatched() const { return unmatched_count_; }
  std::uint64_t matched_pairs() const { return pairs_; }
  std::uint64_t t() const { return t_; }
  bool is_unmatched(std::uint64_t v) const { return unmatched_[v - 1] != 0; }
  // Partner chosen by the latest vertex, 0 if it stayed unmatched.
  std::uint64_t last_partner() const { return last_partner_; }

 private:
  MatchRule rule_;
  std::uint64_t t_ = 1;
  std::uint64_t unmatched_count_ = 1;
  std::uint64_t pairs_ = 0;
  std::uint64_t last_partner_ = 0;
  std::vector<std::uint8_t> unmatched_{1};
};

/// Online greedy independent set: vertex t+1 joins iff none of its
/// selections hits an insider. Loops count as neither insider nor outsider
/// selections.
class IndependentSetTracker final : public Tracker {
 public:
  explicit IndependentSetTracker(const ProcessConfig& config);

  void observe(const StepOutcome& outcome) override;
  void append_metrics(std::uint64_t t, std::vector<MetricRow>& rows) const override;

  std::uint64_t size() const { return size_; }
  std::uint64_t z() const { return z_; }
  std::uint64_t last_u() const { return last_u_; }
  std::uint64_t t() const { return t_; }
  bool is_insider(std::uint64_t v) const { return insider_[v - 1] != 0; }

  double i_frac() const;
  double z_frac() const;
  // i (m+delta)/(2m+delta) + z m/(2m+delta); equals i under UAM.
  double w() const;

 private:
  ProcessConfig config_;
  std::uint64_t t_ = 1;
  std::uint64_t size_ = 1;
  std::uint64_t z_ = 0;
  std::uint64_t last_u_ = 0;
  std::vector<std::uint8_t> insider_{1};
};

struct Edge {
  std::uint64_t source = 0;  // the vertex that created the edge
  std::uint64_t target = 0;  // equal to source for a loop

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Full edge record (loops and multiplicities) in creation order.
struct RetainedGraph {
  std::uint64_t vertex_count = 0;
  std::vector<Edge> edges;

  std::vector<std::uint64_t> degrees() const;
};

/// Records every edge of a running process. Construct before the first step.
class EdgeRecorder final : public StepObserver {
 public:
  explicit EdgeRecorder(const ProcessConfig& config);

  void observe(const StepOutcome& outcome) override;

  const RetainedGraph& graph() const { return graph_; }
  RetainedGraph release() { return std::move(graph_); }

 private:
  RetainedGraph graph_;
};

/// Time-indexed metric rows taken at a fixed schedule.
struct SnapshotSeries {
  std::vector<std::uint64_t> schedule;  // strictly increasing
  std::vector<MetricRow> rows;
};

// ceil(1.2^k) for k = 0, 1, ..., deduplicated, capped by t_max, with t_max last.
std::vector<std::uint64_t> geometric_schedule(std::uint64_t t_max, double ratio = 1.2);

void record_snapshot(SnapshotSeries& series, std::uint64_t t,
                     std::span<const Tracker* const> trackers);

/// Takes a snapshot whenever the process reaches the next scheduled time.
/// Attach after the trackers it reads.
class SnapshotObserver final : public StepObserver {
 public:
  SnapshotObserver(SnapshotSeries& series, std::vector<const Tracker*> trackers,
                   std::uint64_t current_t = 1);

  void observe(const StepOutcome& outcome) override;

 private:
  SnapshotSeries& series_;
  std::vector<const Tracker*> trackers_;
  std::size_t next_ = 0;
};

}  // namespace agebias

#endif  // AGEBIAS_OBSERVERS_HPP_
