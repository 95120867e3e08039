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

#include "agebias/exact.hpp"

#include <sstream>

namespace agebias {
namespace {

struct StepInputs {
  Rational hit;    // Y + delta X
  Rational miss;   // (2m + delta) t - Y - delta X
  Rational total;  // (2m + delta) t
};

StepInputs step_inputs(std::uint64_t t, std::uint32_t m, const Rational& delta,
                       std::uint64_t x, std::uint64_t y) {
  const auto fail = [&](const std::string& what) {
    std::ostringstream out;
    out << "step law precondition violated: " << what << " (t=" << t << ", m=" << m
        << ", delta=" << to_string(delta) << ", X=" << x << ", Y=" << y << ")";
    throw PreconditionError(out.str());
  };
  if (t < 1 || m < 1) fail("t >= 1 and m >= 1");
  if (x > t) fail("X <= t");
  if (static_cast<std::uint64_t>(m) * x > y) fail("m X <= Y");
  if (y > 2ULL * m * x) fail("Y <= 2m X");
  StepInputs in;
  in.total = (Rational(2 * m) + delta) * Rational(t);
  in.hit = Rational(y) + delta * Rational(x);
  in.miss = in.total - in.hit;
  if (in.hit < 0) fail("Y + delta X >= 0");
  if (in.miss < 0) fail("(2m + delta) t >= Y + delta X");
  if (in.total <= 0) fail("(2m + delta) t > 0");
  return in;
}

}  // namespace

Rational to_rational(const Delta& delta) { return Rational(delta.num, delta.den); }

std::string to_string(const Rational& q) {
  std::ostringstream out;
  out << q;
  return out.str();
}

std::string IdentityCheck::describe() const {
  return "lhs=" + to_string(lhs) + " rhs=" + to_string(rhs) + (holds() ? " (equal)" : " (DIFFER)");
}

Rational rising_factorial(const Rational& z, unsigned ell) {
  Rational out = 1;
  for (unsigned j = 0; j < ell; ++j) out *= z + j;
  return out;
}

Rational falling_factorial(const Rational& x, unsigned ell) {
  Rational out = 1;
  for (unsigned j = 0; j < ell; ++j) out *= x - j;
  return out;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt out = 1;
  for (unsigned j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

StirlingTable::StirlingTable(unsigned l_max) : l_max_(l_max), rows_(l_max + 1) {
  rows_[0].assign(1, 1);
  for (unsigned ell = 0; ell < l_max; ++ell) {
    auto& next = rows_[ell + 1];
    next.assign(ell + 2, 0);
    for (unsigned k = 1; k <= ell + 1; ++k) {
      next[k] = rows_[ell][k - 1];
      if (k <= ell) next[k] += ell * rows_[ell][k];
    }
  }
}

const BigInt& StirlingTable::operator()(unsigned ell, unsigned k) const {
  static const BigInt kZero = 0;
  if (ell > l_max_) throw std::out_of_range("stirling: order exceeds table");
  if (k > ell) return kZero;
  return rows_[ell][k];
}

BigInt stirling_unsigned(unsigned ell, unsigned k) {
  static const StirlingTable table;
  return table(ell, k);
}

IdentityCheck verify_stirling_identity(unsigned ell, unsigned i) {
  if (i < 1 || i > ell) throw std::out_of_range("stirling identity: need 1 <= i <= l");
  IdentityCheck check;
  check.lhs = Rational(BigInt(ell) * stirling_unsigned(ell, i));
  BigInt sum = 0;
  for (unsigned k = i; k <= ell; ++k) sum += stirling_unsigned(ell, k) * binomial(k, i - 1);
  check.rhs = Rational(sum);
  return check;
}

IdentityCheck verify_martingale_step(std::uint64_t t, std::uint64_t x, int gamma,
                                     const Rational& delta, unsigned ell) {
  if (gamma != 0 && gamma != -1) throw PreconditionError("martingale: gamma must be 0 or -1");
  if (delta <= -1) throw PreconditionError("martingale: need delta > -1");
  if (x < 1 || x > t) throw PreconditionError("martingale: need 1 <= X <= t");
  const Rational beta = (1 + delta) / (2 + delta);
  const Rational z = Rational(x) + Rational(gamma) / (2 + delta);
  const Rational base = Rational(t) + beta;
  const Rational p = z / base;
  if (p < 0 || p > 1) {
    throw PreconditionError("martingale: jump probability " + to_string(p) + " outside [0, 1]");
  }
  IdentityCheck check;
  check.lhs = p * rising_factorial(z + 1, ell) + (1 - p) * rising_factorial(z, ell);
  check.rhs = (base + ell) / base * rising_factorial(z, ell);
  return check;
}

std::vector<Rational> step_law_exact(std::uint64_t t, std::uint32_t m, const Rational& delta,
                                     std::uint64_t x, std::uint64_t y) {
  const StepInputs in = step_inputs(t, m, delta, x, y);
  const Rational denom = rising_factorial(in.total, m);
  std::vector<Rational> law(m + 1);
  for (std::uint32_t a = 0; a <= m; ++a) {
    law[a] = Rational(binomial(m, a)) * rising_factorial(in.hit, a) *
             rising_factorial(in.miss, m - a) / denom;
  }
  return law;
}

std::vector<Rational> enumeration_oracle(std::uint64_t t, std::uint32_t m,
                                         const Rational& delta, std::uint64_t x,
                                         std::uint64_t y) {
  const StepInputs in = step_inputs(t, m, delta, x, y);
  if (m > 20) throw PreconditionError("enumeration: m too large to enumerate");
  std::vector<Rational> law(m + 1, Rational(0));
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    Rational prob = 1;
    unsigned hits = 0;  // mu_i
    for (std::uint32_t i = 1; i <= m; ++i) {
      const Rational denom = in.total + (i - 1);
      if ((mask >> (i - 1)) & 1ULL) {
        prob *= (in.hit + hits) / denom;
        ++hits;
      } else {
        prob *= (in.miss + (i - 1 - hits)) / denom;
      }
    }
    law[hits] += prob;
  }
  return law;
}

IdentityCheck factorial_moments_check(std::uint64_t t, std::uint32_t m, const Rational& delta,
                                      std::uint64_t x, std::uint64_t y, unsigned mu) {
  const auto law = step_law_exact(t, m, delta, x, y);
  const StepInputs in = step_inputs(t, m, delta, x, y);
  IdentityCheck check;
  check.lhs = 0;
  for (std::uint32_t a = 0; a <= m; ++a) check.lhs += falling_factorial(Rational(a), mu) * law[a];
  check.rhs = falling_factorial(Rational(m), mu) * rising_factorial(in.hit, mu) /
              rising_factorial(in.total, mu);
  return check;
}

Rational loop_free_factor(std::uint64_t t, std::uint32_t m, const Rational& delta) {
  if (t < 1 || m < 1) throw PreconditionError("loop_free_factor: need t, m >= 1");
  if (delta < -Rational(m)) throw PreconditionError("loop_free_factor: delta below -m");
  const Rational td(t);
  Rational prod = 1;
  for (std::uint32_t i = 1; i <= m; ++i) {
    const Rational num = Rational(2ULL * m * t + i - 1) + td * delta;
    const Rational den = Rational(2ULL * m * t + 2 * (i - 1) + 1) + td * delta +
                         Rational(i) * delta / m;
    prod *= num / den;
  }
  return prod;
}

Rational loop_free_bound_constant(std::uint32_t m, const Rational& delta) {
  // Each factor is 1 - i(1 + delta/m) / D_i with D_i >= (2m + delta) t.
  return (Rational(m) + delta) * Rational(m + 1) / (2 * (Rational(2 * m) + delta));
}

ExpectedIncrements expected_increments_exact(std::uint64_t t, std::uint32_t m,
                                             const Rational& delta, std::uint64_t x,
                                             std::uint64_t y) {
  const StepInputs in = step_inputs(t, m, delta, x, y);
  const Rational none = rising_factorial(in.miss, m) / rising_factorial(in.total, m);
  ExpectedIncrements out;
  out.dx = 1 - none;
  out.dy = Rational(m) * in.hit / in.total + Rational(m) * (1 - none);
  return out;
}

ExpectedIncrements expected_increments_from_law(std::uint64_t t, std::uint32_t m,
                                                const Rational& delta, std::uint64_t x,
                                                std::uint64_t y) {
  const auto law = step_law_exact(t, m, delta, x, y);
  ExpectedIncrements out;
  out.dx = 1 - law[0];
  out.dy = 0;
  for (std::uint32_t a = 1; a <= m; ++a) out.dy += Rational(m + a) * law[a];
  return out;
}

void SuiteResult::record(bool ok, const std::string& detail) {
  ++cases;
  if (ok) return;
  ++failures;
  if (failure_details.size() < 8) failure_details.push_back(detail);
}

std::vector<Rational> standard_deltas() {
  return {Rational(-1, 2), Rational(0), Rational(1), Rational(7, 3)};
}

SuiteResult run_martingale_suite(std::uint64_t t_max, unsigned ell_max) {
  SuiteResult suite;
  suite.name = "martingale";
  for (const auto& delta : standard_deltas()) {
    for (std::uint64_t t = 1; t <= t_max; ++t) {
      for (std::uint64_t x = 1; x <= t; ++x) {
        for (int gamma : {0, -1}) {
          for (unsigned ell = 0; ell <= ell_max; ++ell) {
            const auto check = verify_martingale_step(t, x, gamma, delta, ell);
            std::ostringstream where;
            where << "t=" << t << " X=" << x << " gamma=" << gamma << " delta=" << delta
                  << " l=" << ell << ": " << check.describe();
            suite.record(check.holds(), where.str());
          }
        }
      }
    }
  }
  return suite;
}

SuiteResult run_stirling_suite(unsigned ell_max) {
  SuiteResult suite;
  suite.name = "stirling";
  for (unsigned ell = 1; ell <= ell_max; ++ell) {
    for (unsigned i = 1; i <= ell; ++i) {
      const auto check = verify_stirling_identity(ell, i);
      suite.record(check.holds(),
                   "l=" + std::to_string(ell) + " i=" + std::to_string(i) + ": " + check.describe());
    }
  }
  return suite;
}

SuiteResult run_steplaw_suite(std::uint64_t t_max, std::uint32_t m_max) {
  SuiteResult suite;
  suite.name = "steplaw";
  for (const auto& delta : standard_deltas()) {
    for (std::uint32_t m = 1; m <= m_max; ++m) {
      for (std::uint64_t t = 1; t <= t_max; ++t) {
        for (std::uint64_t x = 0; x <= t; ++x) {
          for (std::uint64_t y = m * x; y <= 2ULL * m * x; ++y) {
            std::ostringstream where;
            where << "t=" << t << " m=" << m << " delta=" << delta << " X=" << x << " Y=" << y;
            std::vector<Rational> law;
            try {
              law = step_law_exact(t, m, delta, x, y);
            } catch (const PreconditionError&) {
              continue;  // infeasible for this delta
            }
            Rational mass = 0;
            for (const auto& p : law) mass += p;
            suite.record(mass == 1, where.str() + ": total mass " + to_string(mass));
            suite.record(law == enumeration_oracle(t, m, delta, x, y),
                         where.str() + ": closed form differs from enumeration");
            for (unsigned mu = 0; mu <= m; ++mu) {
              const auto check = factorial_moments_check(t, m, delta, x, y, mu);
              suite.record(check.holds(), where.str() + " mu=" + std::to_string(mu) + ": " +
                                              check.describe());
            }
            const auto closed = expected_increments_exact(t, m, delta, x, y);
            const auto summed = expected_increments_from_law(t, m, delta, x, y);
            suite.record(closed == summed,
                         where.str() + ": increments dx " + to_string(closed.dx) + " vs " +
                             to_string(summed.dx) + ", dy " + to_string(closed.dy) + " vs " +
                             to_string(summed.dy));
          }
        }
      }
    }
  }
  return suite;
}

}  // namespace agebias
