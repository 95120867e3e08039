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

#include "agebias/observers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agebias {
namespace {

double bias_ratio(const ProcessConfig& c, double numer_m, double numer_delta) {
  const double m = c.m;
  const double delta = c.delta.to_double();
  return (numer_m * m + numer_delta * delta) / (2.0 * m + delta);
}

}  // namespace

DescendantTracker::DescendantTracker(const ProcessConfig& config, std::uint64_t root)
    : config_(config), root_(root) {
  if (root < 1) throw ConfigError("root: must be at least 1");
  member_.push_back(root == 1 ? 1 : 0);
  if (root == 1) {
    x_ = 1;
    if (config_.model == Model::kPam) {
      y_ = 2ULL * config_.m;
      start_ = RootStart::kLoop;
      root_loops_ = config_.m;
    } else {
      start_ = RootStart::kAttached;
    }
  }
}

void DescendantTracker::observe(const StepOutcome& outcome) {
  const std::uint64_t v = outcome.new_vertex;
  t_ = v;
  const std::uint32_t loops = outcome.loop_count();
  const std::uint64_t own_degree = static_cast<std::uint64_t>(config_.m) + loops;
  if (v < root_) {
    member_.push_back(0);
    return;
  }
  if (v == root_) {
    member_.push_back(1);
    x_ = 1;
    y_ = own_degree;
    root_loops_ = loops;
    start_ = outcome.selections.front().is_loop ? RootStart::kLoop : RootStart::kAttached;
    return;
  }
  std::uint64_t hits = 0;
  for (const auto& s : outcome.selections) {
    if (!s.is_loop && member_[s.target - 1]) ++hits;
  }
  if (hits == 0) {
    member_.push_back(0);
    return;
  }
  member_.push_back(1);
  ++x_;
  y_ += hits + own_degree;
}

double DescendantTracker::p_x() const { return static_cast<double>(x_) / static_cast<double>(t_); }

double DescendantTracker::p_y() const {
  return static_cast<double>(y_) / (2.0 * config_.m * static_cast<double>(t_));
}

double DescendantTracker::p() const {
  if (config_.model == Model::kUam) return p_x();
  const double m = config_.m;
  const double delta = config_.delta.to_double();
  return (2.0 * m * p_y() + delta * p_x()) / (2.0 * m + delta);
}

void DescendantTracker::append_metrics(std::uint64_t t, std::vector<MetricRow>& rows) const {
  rows.push_back({t, "p_x", p_x()});
  rows.push_back({t, "p_y", p_y()});
  rows.push_back({t, "p", p()});
}

MatchingTracker::MatchingTracker(MatchRule rule) : rule_(rule) {}

void MatchingTracker::observe(const StepOutcome& outcome) {
  t_ = outcome.new_vertex;
  std::uint64_t partner = 0;
  for (const auto& s : outcome.selections) {
    if (s.is_loop || !unmatched_[s.target - 1]) continue;
    if (partner == 0 || (rule_ == MatchRule::kYoungest ? s.target > partner : s.target < partner)) {
      partner = s.target;
    }
  }
  last_partner_ = partner;
  if (partner != 0) {
    unmatched_[partner - 1] = 0;
    unmatched_.push_back(0);
    --unmatched_count_;
    ++pairs_;
  } else {
    unmatched_.push_back(1);
    ++unmatched_count_;
  }
}

void MatchingTracker::append_metrics(std::uint64_t t, std::vector<MetricRow>& rows) const {
  const double td = static_cast<double>(t_);
  rows.push_back({t, "x", static_cast<double>(unmatched_count_) / td});
  rows.push_back({t, "matched_frac", 2.0 * static_cast<double>(pairs_) / td});
}

IndependentSetTracker::IndependentSetTracker(const ProcessConfig& config) : config_(config) {}

void IndependentSetTracker::observe(const StepOutcome& outcome) {
  t_ = outcome.new_vertex;
  std::uint64_t u = 0;
  for (const auto& s : outcome.selections) {
    if (!s.is_loop && insider_[s.target - 1]) ++u;
  }
  last_u_ = u;
  z_ += u;
  insider_.push_back(u == 0 ? 1 : 0);
  if (u == 0) ++size_;
}

double IndependentSetTracker::i_frac() const {
  return static_cast<double>(size_) / static_cast<double>(t_);
}

double IndependentSetTracker::z_frac() const {
  return static_cast<double>(z_) / (static_cast<double>(config_.m) * static_cast<double>(t_));
}

double IndependentSetTracker::w() const {
  if (config_.model == Model::kUam) return i_frac();
  return i_frac() * bias_ratio(config_, 1.0, 1.0) + z_frac() * bias_ratio(config_, 1.0, 0.0);
}

void IndependentSetTracker::append_metrics(std::uint64_t t, std::vector<MetricRow>& rows) const {
  rows.push_back({t, "i", i_frac()});
  rows.push_back({t, "z", z_frac()});
  rows.push_back({t, "w", w()});
}

std::vector<std::uint64_t> RetainedGraph::degrees() const {
  std::vector<std::uint64_t> deg(vertex_count, 0);
  for (const auto& e : edges) {
    ++deg[e.source - 1];
    ++deg[e.target - 1];
  }
  return deg;
}

EdgeRecorder::EdgeRecorder(const ProcessConfig& config) {
  graph_.vertex_count = 1;
  if (config.model == Model::kPam) graph_.edges.assign(config.m, Edge{1, 1});
}

void EdgeRecorder::observe(const StepOutcome& outcome) {
  graph_.vertex_count = outcome.new_vertex;
  for (const auto& s : outcome.selections) graph_.edges.push_back({outcome.new_vertex, s.target});
}

std::vector<std::uint64_t> geometric_schedule(std::uint64_t t_max, double ratio) {
  std::vector<std::uint64_t> times;
  double power = 1.0;
  while (true) {
    const auto t = static_cast<std::uint64_t>(std::ceil(power - 1e-9));
    if (t >= t_max) break;
    if (times.empty() || t > times.back()) times.push_back(t);
    power *= ratio;
  }
  times.push_back(t_max);
  return times;
}

void record_snapshot(SnapshotSeries& series, std::uint64_t t,
                     std::span<const Tracker* const> trackers) {
  for (const auto* tracker : trackers) tracker->append_metrics(t, series.rows);
}

SnapshotObserver::SnapshotObserver(SnapshotSeries& series, std::vector<const Tracker*> trackers,
                                   std::uint64_t current_t)
    : series_(series), trackers_(std::move(trackers)) {
  if (!std::is_sorted(series_.schedule.begin(), series_.schedule.end()) ||
      std::adjacent_find(series_.schedule.begin(), series_.schedule.end()) !=
          series_.schedule.end()) {
    throw ConfigError("schedule: times must be strictly increasing");
  }
  while (next_ < series_.schedule.size() && series_.schedule[next_] < current_t) ++next_;
  if (next_ < series_.schedule.size() && series_.schedule[next_] == current_t) {
    record_snapshot(series_, current_t, trackers_);
    ++next_;
  }
}

void SnapshotObserver::observe(const StepOutcome& outcome) {
  if (next_ < series_.schedule.size() && series_.schedule[next_] == outcome.new_vertex) {
    record_snapshot(series_, outcome.new_vertex, trackers_);
    ++next_;
  }
}

}  // namespace agebias
