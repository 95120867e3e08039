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

#include "agebias/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace agebias {

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, std::fabs(static_cast<double>(i + 1) / n - f),
                  std::fabs(static_cast<double>(i) / n - f)});
  }
  return d;
}

std::vector<double> empirical_moments(std::span<const double> samples,
                                      std::span<const unsigned> orders) {
  if (samples.empty()) throw std::invalid_argument("empirical_moments: no samples");
  std::vector<double> out;
  out.reserve(orders.size());
  for (const unsigned ell : orders) {
    double sum = 0.0;
    for (const double x : samples) sum += std::pow(x, static_cast<double>(ell));
    out.push_back(sum / static_cast<double>(samples.size()));
  }
  return out;
}

double sample_mean(std::span<const double> samples) {
  if (samples.empty()) return 0.0;
  return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

double sample_variance(std::span<const double> samples) {
  if (samples.size() < 2) return 0.0;
  const double mean = sample_mean(samples);
  double ss = 0.0;
  for (const double x : samples) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(samples.size() - 1);
}

double chi_square(std::span<const std::uint64_t> counts, std::span<const double> probabilities) {
  if (counts.size() != probabilities.size()) throw std::invalid_argument("chi_square: size mismatch");
  const double n = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  double stat = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double expected = n * probabilities[k];
    if (expected == 0.0) {
      if (counts[k] != 0) return std::numeric_limits<double>::infinity();
      continue;
    }
    const double diff = static_cast<double>(counts[k]) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

double chi_square_sf(double statistic, unsigned dof) {
  if (dof == 0) return statistic > 0.0 ? 0.0 : 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

double log_rate_slope(std::span<const double> times, std::span<const double> values,
                      double limit) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t k = 0; k < times.size() && k < values.size(); ++k) {
    const double gap = std::fabs(values[k] - limit);
    if (gap > 0.0 && times[k] > 0.0) {
      lx.push_back(std::log(times[k]));
      ly.push_back(std::log(gap));
    }
  }
  if (lx.size() < 2) return std::nan("");
  const double mx = sample_mean(lx);
  const double my = sample_mean(ly);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::nan("");
}

}  // namespace agebias
