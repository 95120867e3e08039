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

#ifndef AGEBIAS_ANALYTICS_HPP_
#define AGEBIAS_ANALYTICS_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "agebias/process.hpp"

namespace agebias {

// Passing this as delta selects the uniform-attachment form of a drift.
inline constexpr double kUniformDelta = std::numeric_limits<double>::infinity();

enum class DriftKind {
  kPamMatching,  // 2[1 - c z]^m - z - 1
  kUamMatching,  // 2(1 - z)^m - z - 1
  kIndependent,  // c[-w + (1 - w)^m]
  kDescendant,   // c[1 - p - (1 - p)^m]
};

// c = (m + delta) / (2m + delta); 1 for kUniformDelta.
double attachment_bias(std::uint32_t m, double delta);

// Throws std::domain_error for x outside [0, 1].
double drift_value(DriftKind kind, std::uint32_t m, double delta, double x);

enum class ConstantKind { kRhoPamMatching, kRUamMatching, kWIndependent };

std::string to_string(ConstantKind kind);

struct LimitConstant {
  ConstantKind kind;
  std::uint32_t m = 1;
  double delta = 0.0;
  double value = 0.0;
  double lo = 0.0;  // certified bracket: the drift changes sign on [lo, hi]
  double hi = 0.0;

  double width() const { return hi - lo; }
};

inline constexpr double kDefaultRootTol = 1e-12;

// Root of the PAM matching drift; 1 - value is the matched-fraction bound.
// delta == -m yields exactly 1.
LimitConstant rho_pam_matching(std::uint32_t m, double delta, double tol = kDefaultRootTol);
// Root r_m of 2(1 - z^m) - z.
LimitConstant r_uam_matching(std::uint32_t m, double tol = kDefaultRootTol);
// Root w_m of -w + (1 - w)^m.
LimitConstant w_independent(std::uint32_t m, double tol = kDefaultRootTol);

// Leading-order expansion of the constants for large m.
double asymptotic_constant(ConstantKind kind, std::uint32_t m);

struct BetaComponent {
  double weight = 1.0;
  double a = 1.0;
  double b = 1.0;
};

/// Limit law of a descendant fraction: a finite beta mixture, or a point
/// mass at 1 when `components` is empty.
struct LimitLaw {
  std::vector<BetaComponent> components;

  bool is_point_mass() const { return components.empty(); }
};

// PAM m=1 (delta > -1, r >= 2): two-component mixture. UAM m=1 (r >= 2):
// Beta(1, r-1). m > 1: point mass at 1. Throws ConfigError otherwise.
LimitLaw descendant_limit_law(Model model, std::uint32_t m, std::uint64_t r, double delta);

double mixture_moment(const LimitLaw& law, unsigned ell);
// x is clamped to [0, 1].
double mixture_cdf(const LimitLaw& law, double x);
double mixture_density(const LimitLaw& law, double x);

// Regularized incomplete beta I_x(a, b). Continued fraction with log-gamma
// normalisation; falls back to quadrature when the fraction stalls.
double incomplete_beta(double a, double b, double x);
// Same quantity by adaptive Simpson on the density.
double incomplete_beta_quadrature(double a, double b, double x);

// Adaptive Simpson on [lo, hi] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double tol);

}  // namespace agebias

#endif  // AGEBIAS_ANALYTICS_HPP_
