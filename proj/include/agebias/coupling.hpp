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

#ifndef AGEBIAS_COUPLING_HPP_
#define AGEBIAS_COUPLING_HPP_

#include <cstdint>
#include <vector>

#include "agebias/delta.hpp"
#include "agebias/exact.hpp"
#include "agebias/observers.hpp"

namespace agebias {

/// Maps every fine vertex v_a onto block ceil(a/m); edges keep their order
/// and multiplicity, and edges inside one block become loops. Throws
/// ConfigError unless the fine vertex count is a multiple of m.
RetainedGraph collapse(const RetainedGraph& fine, std::uint32_t m);

/// A fine G(1, delta/m) run on m t vertices together with its collapse.
struct CoupledRun {
  std::uint32_t m = 1;
  Delta delta;
  std::uint64_t t = 1;
  std::uint64_t seed = 0;
  RetainedGraph fine;
  RetainedGraph coarse;
};

// Config of the fine process that collapses onto PAM(m, delta).
ProcessConfig fine_config(std::uint32_t m, const Delta& delta, std::uint64_t t_max);

CoupledRun make_coupled_run(std::uint32_t m, const Delta& delta, std::uint64_t t,
                            std::uint64_t seed);

/// Runs the fine process for `fine_vertices` vertices, keeping all edges.
RetainedGraph simulate_fine(std::uint32_t m, const Delta& delta, std::uint64_t fine_vertices,
                            std::uint64_t seed);

/// Given a fine prefix with vertex count m t + i - 1 (so v_{mt+i}, the i-th
/// edge of coarse vertex t+1, is next), returns
///   P_fine(v_{mt+i} lands in block x) - P_coarse(edge i of w_{t+1} lands on w_x)
/// exactly. x in [1, t] compares a block, x = t+1 the loop branch.
Rational transition_equivalence_check(const RetainedGraph& fine_prefix, std::uint32_t m,
                                      const Delta& delta, std::uint64_t x);

// First n fine vertices of a run and the edges they created.
RetainedGraph fine_prefix(const RetainedGraph& fine, std::uint64_t n);

/// Runs transition_equivalence_check for every target block on the prefixes
/// n = m, m+1, ..., m+prefixes-1 of `fine` and returns how many of those
/// differences are nonzero.
std::uint64_t transition_mismatches(const RetainedGraph& fine, std::uint32_t m,
                                    const Delta& delta, std::uint64_t prefixes);

// Descendants of `root` among vertices 1..t, following non-loop edges from
// the creating vertex to older vertices.
std::uint64_t descendant_count(const RetainedGraph& graph, std::uint64_t root, std::uint64_t t);

struct CouplingCheck {
  std::uint64_t coarse_x = 0;  // X_{m,delta}(t, r)
  std::uint64_t fine_x = 0;    // X_{1,delta/m}(mt, mr)

  // m * coarse_x >= fine_x
  bool holds(std::uint32_t m) const { return static_cast<std::uint64_t>(m) * coarse_x >= fine_x; }
};

CouplingCheck descendant_coupling_check(const CoupledRun& run, std::uint64_t r, std::uint64_t t);

}  // namespace agebias

#endif  // AGEBIAS_COUPLING_HPP_
