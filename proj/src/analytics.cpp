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

#include "agebias/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agebias {
namespace {

template <typename F>
LimitConstant bisect(ConstantKind kind, std::uint32_t m, double delta, double tol, F&& f) {
  if (!(tol > 0.0)) throw std::domain_error("tol: must be positive");
  double lo = 0.0;
  double hi = 1.0;
  double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo > 0.0 && fhi < 0.0)) {
    throw std::domain_error("bisection: no sign change on [0, 1]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm > 0.0) {
      lo = mid;
      flo = fm;
    } else if (fm < 0.0) {
      hi = mid;
    } else {
      lo = hi = mid;
    }
  }
  return {kind, m, delta, 0.5 * (lo + hi), lo, hi};
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Lentz evaluation of the incomplete-beta continued fraction. Returns NaN
// when it fails to converge.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 1000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int k = 1; k <= kMaxIter; ++k) {
    const int k2 = 2 * k;
    double aa = k * (b - k) * x / ((qam + k2) * (a + k2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + k) * (qab + k) * x / ((a + k2) * (qap + k2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  return std::nan("");
}

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::fabs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

void check_unit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("drift: x outside [0, 1]");
}

}  // namespace

double attachment_bias(std::uint32_t m, double delta) {
  if (std::isinf(delta)) return 1.0;
  return (m + delta) / (2.0 * m + delta);
}

double drift_value(DriftKind kind, std::uint32_t m, double delta, double x) {
  check_unit(x);
  const double c = attachment_bias(m, delta);
  switch (kind) {
    case DriftKind::kPamMatching:
      return 2.0 * std::pow(1.0 - c * x, m) - x - 1.0;
    case DriftKind::kUamMatching:
      return 2.0 * std::pow(1.0 - x, m) - x - 1.0;
    case DriftKind::kIndependent:
      return c * (-x + std::pow(1.0 - x, m));
    case DriftKind::kDescendant:
      return c * (1.0 - x - std::pow(1.0 - x, m));
  }
  throw std::logic_error("drift: unknown kind");
}

std::string to_string(ConstantKind kind) {
  switch (kind) {
    case ConstantKind::kRhoPamMatching: return "rho_pam_matching";
    case ConstantKind::kRUamMatching: return "r_uam_matching";
    case ConstantKind::kWIndependent: return "w_independent";
  }
  return "unknown";
}

LimitConstant rho_pam_matching(std::uint32_t m, double delta, double tol) {
  if (m < 1) throw ConfigError("m: must be at least 1");
  if (delta < -static_cast<double>(m)) throw ConfigError("delta: delta below -m");
  if (delta == -static_cast<double>(m)) return {ConstantKind::kRhoPamMatching, m, delta, 1.0, 1.0, 1.0};
  return bisect(ConstantKind::kRhoPamMatching, m, delta, tol, [&](double z) {
    return drift_value(DriftKind::kPamMatching, m, delta, z);
  });
}

LimitConstant r_uam_matching(std::uint32_t m, double tol) {
  if (m < 1) throw ConfigError("m: must be at least 1");
  return bisect(ConstantKind::kRUamMatching, m, kUniformDelta, tol,
                [&](double z) { return 2.0 * (1.0 - std::pow(z, m)) - z; });
}

LimitConstant w_independent(std::uint32_t m, double tol) {
  if (m < 1) throw ConfigError("m: must be at least 1");
  return bisect(ConstantKind::kWIndependent, m, kUniformDelta, tol,
                [&](double w) { return -w + std::pow(1.0 - w, m); });
}

double asymptotic_constant(ConstantKind kind, std::uint32_t m) {
  const double md = m;
  switch (kind) {
    case ConstantKind::kRhoPamMatching: return 1.0 - 2.0 * std::log(2.0) / md;
    case ConstantKind::kRUamMatching: return 1.0 - std::log(2.0) / md;
    case ConstantKind::kWIndependent: return std::log(md) / md;
  }
  throw std::logic_error("asymptotic_constant: unknown kind");
}

LimitLaw descendant_limit_law(Model model, std::uint32_t m, std::uint64_t r, double delta) {
  if (m < 1) throw ConfigError("m: must be at least 1");
  if (m > 1) {
    if (model == Model::kPam && !(delta > -static_cast<double>(m))) {
      throw ConfigError("delta: need delta > -m");
    }
    return {};
  }
  if (r < 2) throw ConfigError("root: limit law needs r >= 2 when m = 1");
  const double rd = static_cast<double>(r);
  if (model == Model::kUam) return {{{1.0, 1.0, rd - 1.0}}};
  if (!(delta > -1.0)) throw ConfigError("delta: need delta > -1 when m = 1");
  const double denom = (2.0 + delta) * rd - 1.0;
  return {{
      {(1.0 + delta) / denom, 1.0, rd - 1.0 / (2.0 + delta)},
      {(2.0 + delta) * (rd - 1.0) / denom, (1.0 + delta) / (2.0 + delta), rd},
  }};
}

double mixture_moment(const LimitLaw& law, unsigned ell) {
  if (law.is_point_mass()) return 1.0;
  double total = 0.0;
  for (const auto& c : law.components) {
    double prod = 1.0;
    for (unsigned j = 0; j < ell; ++j) prod *= (c.a + j) / (c.a + c.b + j);
    total += c.weight * prod;
  }
  return total;
}

double mixture_cdf(const LimitLaw& law, double x) {
  x = std::clamp(x, 0.0, 1.0);
  if (law.is_point_mass()) return x >= 1.0 ? 1.0 : 0.0;
  double total = 0.0;
  for (const auto& c : law.components) total += c.weight * incomplete_beta(c.a, c.b, x);
  return std::clamp(total, 0.0, 1.0);
}

double mixture_density(const LimitLaw& law, double x) {
  if (law.is_point_mass() || x <= 0.0 || x >= 1.0) return 0.0;
  double total = 0.0;
  for (const auto& c : law.components) {
    total += c.weight * std::exp((c.a - 1.0) * std::log(x) + (c.b - 1.0) * std::log1p(-x) -
                                 log_beta(c.a, c.b));
  }
  return total;
}

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw std::domain_error("incomplete_beta: need a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    const double cf = beta_continued_fraction(a, b, x);
    if (std::isfinite(cf)) return front * cf / a;
  } else {
    const double cf = beta_continued_fraction(b, a, 1.0 - x);
    if (std::isfinite(cf)) return 1.0 - front * cf / b;
  }
  return incomplete_beta_quadrature(a, b, x);
}

double incomplete_beta_quadrature(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw std::domain_error("incomplete_beta: need a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x > 0.5) return 1.0 - incomplete_beta_quadrature(b, a, 1.0 - x);
  // With x = s^(1/a) the density x^(a-1) dx becomes ds / a, which removes the
  // singularity at 0 when a < 1.
  const double norm = std::exp(-log_beta(a, b)) / a;
  const auto integrand = [&](double s) {
    const double y = std::pow(s, 1.0 / a);
    return norm * std::exp((b - 1.0) * std::log1p(-y));
  };
  return adaptive_simpson(integrand, 0.0, std::pow(x, a), 1e-13);
}

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double tol) {
  if (hi <= lo) return 0.0;
  const double fa = f(lo);
  const double fb = f(hi);
  const double fm = f(0.5 * (lo + hi));
  const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, lo, hi, fa, fm, fb, whole, tol, 50);
}

}  // namespace agebias
