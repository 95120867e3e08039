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

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"

#include "agebias/process.hpp"
#include "agebias/stats.hpp"

using namespace agebias;

namespace {

ProcessConfig pam(std::uint32_t m, Delta delta, std::uint64_t t_max = 100) {
  ProcessConfig c;
  c.model = Model::kPam;
  c.m = m;
  c.delta = delta;
  c.t_max = t_max;
  return c;
}

ProcessConfig uam(std::uint32_t m, std::uint64_t t_max = 100) {
  ProcessConfig c;
  c.model = Model::kUam;
  c.m = m;
  c.t_max = t_max;
  return c;
}

// Selection law written straight from the attachment rule, in doubles.
std::vector<double> hand_law(std::uint32_t m, double delta, const std::vector<double>& degrees,
                             double self_degree, unsigned i) {
  const double t = static_cast<double>(degrees.size());
  const double denom = (2 * m + delta) * t + 2 * i - 1 + i * delta / m;
  std::vector<double> p;
  for (double d : degrees) p.push_back((d + delta) / denom);
  p.push_back((self_degree + 1 + i * delta / m) / denom);
  return p;
}

}  // namespace

TEST_SUITE("process") {

TEST_CASE("initial state") {
  CHECK(ProcessState::init(pam(3, Delta(0)), 1).degree(1) == 6);
  CHECK(ProcessState::init(uam(2), 1).degree(1) == 0);
  CHECK(ProcessState::init(pam(3, Delta(0)), 1).t() == 1);
  CHECK_THROWS_AS(ProcessState::init(pam(1, Delta(-3, 2)), 1), ConfigError);
  CHECK_NOTHROW(ProcessState::init(pam(2, Delta(-2)), 1));
  ProcessConfig zero_m = pam(1, Delta(0));
  zero_m.m = 0;
  CHECK_THROWS_AS(validate(zero_m), ConfigError);
}

TEST_CASE("first selection law for m = 1, delta = 0") {
  const auto state = ProcessState::init(pam(1, Delta(0)), 1);
  const auto dist = state.attachment_distribution();
  REQUIRE(dist.self_weight);
  CHECK(dist.weights.size() == 1);
  CHECK(3 * dist.weights[0] == 2 * dist.total);
  CHECK(3 * *dist.self_weight == dist.total);
}

TEST_CASE("star state puts all mass on vertex 1") {
  auto state = ProcessState::from_degrees(pam(1, Delta(-1)), {5, 1, 1, 1}, 1);
  const auto dist = state.attachment_distribution();
  CHECK(dist.weights[0] == dist.total);
  CHECK(*dist.self_weight == 0);
  for (std::size_t k = 1; k < dist.weights.size(); ++k) CHECK(dist.weights[k] == 0);
  for (int s = 0; s < 50; ++s) {
    const auto& out = state.advance_step();
    CHECK(out.selections[0] == Selection{1, false});
  }
}

TEST_CASE("UAM law is uniform without loops") {
  const auto state = ProcessState::from_degrees(uam(1), {2, 1, 1}, 1);
  const auto dist = state.attachment_distribution();
  CHECK_FALSE(dist.self_weight);
  CHECK(dist.total == 3);
  for (auto w : dist.weights) CHECK(w == 1);
}

TEST_CASE("sub-step denominators for m = 2, delta = 0 at t = 1") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto state = ProcessState::init(pam(2, Delta(0)), seed);
    const auto first = state.attachment_distribution();
    CHECK(first.total == 2 * 5);  // scaled by m
    CHECK(first.weights[0] * 5 == 4 * first.total);
    state.begin_step();
    const Selection s = state.draw_selection();
    const auto second = state.attachment_distribution();
    CHECK(second.total == 2 * 7);
    if (s.is_loop) {
      CHECK(second.weights[0] * 7 == 4 * second.total);
      CHECK(*second.self_weight * 7 == 3 * second.total);
    } else {
      CHECK(second.weights[0] * 7 == 5 * second.total);
      CHECK(*second.self_weight * 7 == 2 * second.total);
    }
    state.draw_selection();
    state.finish_step();
  }
}

TEST_CASE("mid-step weights match the attachment rule") {
  const std::uint32_t m = 3;
  const Delta delta(-5, 2);
  auto state = ProcessState::init(pam(m, delta), 5);
  for (int s = 0; s < 40; ++s) state.advance_step();
  state.begin_step();
  for (unsigned i = 1; i <= m; ++i) {
    const auto dist = state.attachment_distribution();
    std::vector<double> degrees(state.degrees().begin(), state.degrees().end());
    const auto expected =
        hand_law(m, delta.to_double(), degrees, static_cast<double>(state.self_degree()), i);
    for (std::uint64_t x = 1; x <= degrees.size() + 1; ++x) {
      CHECK(dist.probability(x) == doctest::Approx(expected[x - 1]).epsilon(1e-12));
    }
    state.draw_selection();
  }
  state.finish_step();
}

TEST_CASE("sampled first selection matches the law") {
  const std::uint32_t m = 2;
  const Delta delta(1, 2);
  const std::vector<std::uint64_t> degrees{5, 4, 3};
  const auto expected = hand_law(m, 0.5, {5, 4, 3}, 0, 1);
  std::array<std::uint64_t, 4> counts{};
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    auto state = ProcessState::from_degrees(pam(m, delta), degrees, k);
    state.begin_step();
    const Selection s = state.draw_selection();
    ++counts[s.target - 1];
  }
  const double stat = chi_square(counts, expected);
  CHECK(chi_square_sf(stat, 3) > 1e-4);
}

TEST_CASE("sampled second selection after a loop-free first one") {
  // Law of the pair (first, second) for m = 2, delta = 1 from state {6, 3, 3}.
  const std::uint32_t m = 2;
  const std::vector<double> deg{6, 3, 3};
  std::vector<double> joint;
  const auto p1 = hand_law(m, 1.0, deg, 0, 1);
  for (std::size_t a = 0; a < 4; ++a) {
    auto d2 = deg;
    double self = 0;
    if (a < 3) {
      d2[a] += 1;
      self = 1;
    } else {
      self = 2;
    }
    const auto p2 = hand_law(m, 1.0, d2, self, 2);
    for (std::size_t b = 0; b < 4; ++b) joint.push_back(p1[a] * p2[b]);
  }
  std::vector<std::uint64_t> counts(16, 0);
  const int n = 300000;
  for (int k = 0; k < n; ++k) {
    auto state = ProcessState::from_degrees(pam(m, Delta(1)), {6, 3, 3}, 1000003ULL * k);
    const auto& out = state.advance_step();
    ++counts[(out.selections[0].target - 1) * 4 + out.selections[1].target - 1];
  }
  CHECK(chi_square_sf(chi_square(counts, joint), 15) > 1e-4);
}

TEST_CASE("vertex-one-only loop rule never self-selects") {
  auto config = pam(2, Delta(1, 3));
  config.loops = LoopRule::kLoopsOnlyAtVertexOne;
  auto state = ProcessState::init(config, 3);
  const auto dist = state.attachment_distribution();
  CHECK_FALSE(dist.self_weight);
  CHECK(dist.weights[0] == dist.total);
  for (int s = 0; s < 300; ++s) {
    for (const auto& sel : state.advance_step().selections) CHECK_FALSE(sel.is_loop);
  }
  const auto mid = state.attachment_distribution();
  const auto sum = std::accumulate(mid.weights.begin(), mid.weights.end(), std::int64_t{0});
  CHECK(sum == mid.total);
}

TEST_CASE("star for m = 1, delta = -1") {
  auto state = ProcessState::init(pam(1, Delta(-1), 1000), 17);
  run(state, 1000, {});
  CHECK(state.degree(1) == 1001);
  for (std::uint64_t v = 2; v <= 1000; ++v) REQUIRE(state.degree(v) == 1);
}

namespace {
struct Recorder : StepObserver {
  std::vector<StepOutcome> seen;
  void observe(const StepOutcome& o) override { seen.push_back(o); }
};
}  // namespace

TEST_CASE("same seed, same outcomes") {
  for (const auto& config : {pam(3, Delta(7, 3)), uam(2)}) {
    Recorder a, b;
    auto s1 = ProcessState::init(config, 99);
    auto s2 = ProcessState::init(config, 99);
    StepObserver* oa[] = {&a};
    StepObserver* ob[] = {&b};
    run(s1, 500, oa);
    run(s2, 500, ob);
    CHECK(a.seen == b.seen);
    CHECK(a.seen.size() == 499);
  }
}

TEST_CASE("UAM with m = 1 builds a tree") {
  auto state = ProcessState::init(uam(1, 10), 4);
  Recorder rec;
  StepObserver* obs[] = {&rec};
  run(state, 10, obs);
  std::uint64_t sum = 0;
  for (auto d : state.degrees()) sum += d;
  CHECK(sum == 18);
  for (const auto& o : rec.seen) {
    CHECK(o.loop_count() == 0);
    CHECK(o.selections[0].target < o.new_vertex);
  }
}

TEST_CASE("UAM m = 2 at t = 1 hits vertex 1 twice") {
  auto state = ProcessState::init(uam(2), 8);
  const auto& out = state.advance_step();
  CHECK(out.selections == std::vector<Selection>{{1, false}, {1, false}});
}

TEST_CASE("degree sums stay consistent") {
  for (const auto& config : {pam(1, Delta(0)), pam(4, Delta(-7, 2)), pam(2, Delta(5)), uam(3)}) {
    auto state = ProcessState::init(config, 21);
    for (int s = 0; s < 400; ++s) {
      const auto& out = state.advance_step();
      std::uint64_t sum = 0;
      for (auto d : state.degrees()) sum += d;
      const std::uint64_t t = state.t();
      CHECK(sum == (config.model == Model::kPam ? 2 * config.m * t : 2 * config.m * (t - 1)));
      CHECK(state.degree(t) == config.m + out.loop_count());
    }
  }
}

TEST_CASE("from_degrees validates the degree sum") {
  CHECK_THROWS_AS(ProcessState::from_degrees(pam(1, Delta(0)), {2, 1}, 1), ConfigError);
  CHECK_NOTHROW(ProcessState::from_degrees(pam(1, Delta(0)), {3, 1}, 1));
  CHECK_THROWS_AS(ProcessState::from_degrees(uam(1), {}, 1), ConfigError);
}

TEST_CASE("run rejects going backwards") {
  auto state = ProcessState::init(pam(1, Delta(0)), 1);
  run(state, 5, {});
  CHECK_THROWS_AS(run(state, 4, {}), ConfigError);
  CHECK_THROWS_AS(state.finish_step(), std::logic_error);
}

}
