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

#include "agebias/coupling.hpp"

#include <array>
#include <stdexcept>

namespace agebias {
namespace {

std::uint64_t block_of(std::uint64_t a, std::uint32_t m) { return (a + m - 1) / m; }

Rational exact_probability(const AttachmentDistribution& dist, std::int64_t weight) {
  return Rational(weight, dist.total);
}

}  // namespace

RetainedGraph collapse(const RetainedGraph& fine, std::uint32_t m) {
  if (m < 1) throw ConfigError("m: must be at least 1");
  if (fine.vertex_count % m != 0) {
    throw ConfigError("collapse: fine vertex count " + std::to_string(fine.vertex_count) +
                      " is not divisible by m=" + std::to_string(m));
  }
  RetainedGraph coarse;
  coarse.vertex_count = fine.vertex_count / m;
  coarse.edges.reserve(fine.edges.size());
  for (const auto& e : fine.edges) coarse.edges.push_back({block_of(e.source, m), block_of(e.target, m)});
  return coarse;
}

ProcessConfig fine_config(std::uint32_t m, const Delta& delta, std::uint64_t t_max) {
  ProcessConfig cfg;
  cfg.model = Model::kPam;
  cfg.m = 1;
  cfg.delta = delta.divided_by(m);
  cfg.t_max = t_max;
  return cfg;
}

RetainedGraph simulate_fine(std::uint32_t m, const Delta& delta, std::uint64_t fine_vertices,
                            std::uint64_t seed) {
  const ProcessConfig cfg = fine_config(m, delta, fine_vertices);
  auto state = ProcessState::init(cfg, seed);
  EdgeRecorder recorder(cfg);
  std::array<StepObserver*, 1> observers{&recorder};
  run(state, fine_vertices, observers);
  return recorder.release();
}

CoupledRun make_coupled_run(std::uint32_t m, const Delta& delta, std::uint64_t t,
                            std::uint64_t seed) {
  if (!delta.at_least_minus(m)) throw ConfigError("delta: delta below -m");
  CoupledRun coupled;
  coupled.m = m;
  coupled.delta = delta;
  coupled.t = t;
  coupled.seed = seed;
  coupled.fine = simulate_fine(m, delta, static_cast<std::uint64_t>(m) * t, seed);
  coupled.coarse = collapse(coupled.fine, m);
  return coupled;
}

Rational transition_equivalence_check(const RetainedGraph& fine_prefix, std::uint32_t m,
                                      const Delta& delta, std::uint64_t x) {
  const std::uint64_t n = fine_prefix.vertex_count;  // = m t + i - 1
  if (n < m) throw ConfigError("transition check: prefix shorter than one block");
  const std::uint64_t t = n / m;
  const auto i = static_cast<std::uint32_t>(n % m + 1);
  if (x < 1 || x > t + 1) throw ConfigError("transition check: block out of range");

  // Fine side: m = 1 process with shift delta/m, about to add v_{n+1}.
  const auto fine_degrees = fine_prefix.degrees();
  const ProcessConfig fine_cfg = fine_config(m, delta, n + 1);
  const auto fine = attachment_distribution(fine_cfg, fine_degrees, 0, 1);
  std::int64_t fine_mass = 0;
  if (x <= t) {
    for (std::uint64_t y = m * (x - 1) + 1; y <= m * x; ++y) fine_mass += fine.weights[y - 1];
  } else {
    for (std::uint64_t y = m * t + 1; y <= n; ++y) fine_mass += fine.weights[y - 1];
    fine_mass += *fine.self_weight;
  }

  // Coarse side: degrees of the collapsed prefix, with the partial vertex
  // w_{t+1} holding the degree of its first i-1 edges.
  std::vector<std::uint64_t> coarse_degrees(t + 1, 0);
  for (const auto& e : fine_prefix.edges) {
    ++coarse_degrees[block_of(e.source, m) - 1];
    ++coarse_degrees[block_of(e.target, m) - 1];
  }
  const std::uint64_t partial = coarse_degrees[t];
  coarse_degrees.pop_back();
  ProcessConfig coarse_cfg;
  coarse_cfg.model = Model::kPam;
  coarse_cfg.m = m;
  coarse_cfg.delta = delta;
  coarse_cfg.t_max = t + 1;
  const auto coarse = attachment_distribution(coarse_cfg, coarse_degrees, partial, i);
  const std::int64_t coarse_weight = x <= t ? coarse.weights[x - 1] : *coarse.self_weight;

  return exact_probability(fine, fine_mass) - exact_probability(coarse, coarse_weight);
}

RetainedGraph fine_prefix(const RetainedGraph& fine, std::uint64_t n) {
  if (n > fine.vertex_count) throw ConfigError("prefix: longer than the run");
  RetainedGraph prefix;
  prefix.vertex_count = n;
  for (const auto& e : fine.edges) {
    if (e.source > n) break;
    prefix.edges.push_back(e);
  }
  return prefix;
}

std::uint64_t transition_mismatches(const RetainedGraph& fine, std::uint32_t m,
                                    const Delta& delta, std::uint64_t prefixes) {
  std::uint64_t mismatches = 0;
  for (std::uint64_t n = m; n < m + prefixes && n <= fine.vertex_count; ++n) {
    const RetainedGraph prefix = fine_prefix(fine, n);
    for (std::uint64_t x = 1; x <= n / m + 1; ++x) {
      if (transition_equivalence_check(prefix, m, delta, x) != 0) ++mismatches;
    }
  }
  return mismatches;
}

std::uint64_t descendant_count(const RetainedGraph& graph, std::uint64_t root, std::uint64_t t) {
  if (root < 1 || root > t || t > graph.vertex_count) {
    throw ConfigError("descendants: need 1 <= root <= t <= vertex count");
  }
  std::vector<std::uint8_t> member(t + 1, 0);
  member[root] = 1;
  std::uint64_t count = 1;
  // Edges are in creation order, so every target is settled before its source.
  for (const auto& e : graph.edges) {
    if (e.source > t) break;
    if (e.source <= root || e.source == e.target || member[e.source]) continue;
    if (member[e.target]) {
      member[e.source] = 1;
      ++count;
    }
  }
  return count;
}

CouplingCheck descendant_coupling_check(const CoupledRun& run, std::uint64_t r, std::uint64_t t) {
  if (t > run.t) throw ConfigError("coupling check: t exceeds the coupled run");
  CouplingCheck check;
  check.coarse_x = descendant_count(run.coarse, r, t);
  check.fine_x = descendant_count(run.fine, static_cast<std::uint64_t>(run.m) * r,
                                  static_cast<std::uint64_t>(run.m) * t);
  return check;
}

}  // namespace agebias
