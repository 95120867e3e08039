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

#ifndef AGEBIAS_STATS_HPP_
#define AGEBIAS_STATS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace agebias {

// D_N = max_i max(|i/N - F(x_(i))|, |(i-1)/N - F(x_(i))|) over sorted samples.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

// Sample means of x^l for each requested l.
std::vector<double> empirical_moments(std::span<const double> samples,
                                      std::span<const unsigned> orders);

double sample_mean(std::span<const double> samples);
// Unbiased sample variance; 0 for fewer than two samples.
double sample_variance(std::span<const double> samples);

// Pearson chi-square statistic of observed counts against expected
// probabilities (cells with zero probability must have zero counts).
double chi_square(std::span<const std::uint64_t> counts, std::span<const double> probabilities);

// Upper-tail probability of a chi-square variable with k degrees of freedom.
double chi_square_sf(double statistic, unsigned dof);

// Least-squares slope of log|value - limit| against log t.
double log_rate_slope(std::span<const double> times, std::span<const double> values,
                      double limit);

}  // namespace agebias

#endif  // AGEBIAS_STATS_HPP_
