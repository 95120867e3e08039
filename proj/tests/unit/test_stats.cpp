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

#include <cmath>
#include <vector>

#include "doctest.h"

#include "agebias/stats.hpp"

using namespace agebias;

TEST_SUITE("stats") {

TEST_CASE("KS statistic") {
  const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  const std::vector<double> one{0.5};
  CHECK(ks_statistic(one, uniform) == doctest::Approx(0.5));
  std::vector<double> quantiles;
  const int n = 999;
  for (int i = 1; i <= n; ++i) quantiles.push_back(static_cast<double>(i) / (n + 1));
  CHECK(ks_statistic(quantiles, uniform) <= 1.0 / (n + 1) + 1e-12);
  const std::vector<double> ones(500, 1.0);
  CHECK(ks_statistic(ones, uniform) == doctest::Approx(1.0));
  // Reordering does not matter.
  std::vector<double> shuffled{0.9, 0.1, 0.5, 0.3};
  std::vector<double> sorted{0.1, 0.3, 0.5, 0.9};
  CHECK(ks_statistic(shuffled, uniform) == ks_statistic(sorted, uniform));
}

TEST_CASE("moments") {
  const std::vector<double> s{0.2, 0.4};
  const std::vector<unsigned> first{1};
  CHECK(empirical_moments(s, first)[0] == doctest::Approx(0.3));
  const std::vector<double> half(10, 0.5);
  const std::vector<unsigned> second{2};
  CHECK(empirical_moments(half, second)[0] == doctest::Approx(0.25));
  CHECK(sample_mean(s) == doctest::Approx(0.3));
  CHECK(sample_variance(s) == doctest::Approx(0.02));
  CHECK(sample_variance(std::vector<double>{1.0}) == 0.0);
}

TEST_CASE("chi-square") {
  const std::vector<std::uint64_t> counts{50, 50};
  const std::vector<double> p{0.5, 0.5};
  CHECK(chi_square(counts, p) == 0.0);
  const std::vector<std::uint64_t> skew{60, 40};
  CHECK(chi_square(skew, p) == doctest::Approx(4.0));
  CHECK(chi_square_sf(0.0, 3) == doctest::Approx(1.0));
  // Reference: upper tail of chi-square(2) at 4 is exp(-2).
  CHECK(chi_square_sf(4.0, 2) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("log-rate slope") {
  std::vector<double> t, v;
  for (double x : {10.0, 100.0, 1000.0, 10000.0}) {
    t.push_back(x);
    v.push_back(0.3 + 2.0 * std::pow(x, -0.25));
  }
  CHECK(log_rate_slope(t, v, 0.3) == doctest::Approx(-0.25).epsilon(1e-9));
}

}
