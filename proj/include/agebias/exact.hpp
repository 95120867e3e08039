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

#ifndef AGEBIAS_EXACT_HPP_
#define AGEBIAS_EXACT_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "agebias/delta.hpp"

namespace agebias {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational to_rational(const Delta& delta);
std::string to_string(const Rational& q);

// Raised when an exact-law input violates its feasibility conditions.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Outcome of an exact identity check: both sides, and whether they agree.
struct IdentityCheck {
  Rational lhs;
  Rational rhs;

  bool holds() const { return lhs == rhs; }
  explicit operator bool() const { return holds(); }
  std::string describe() const;
};

// z^(l) = z (z+1) ... (z+l-1)
Rational rising_factorial(const Rational& z, unsigned ell);
// (x)_l = x (x-1) ... (x-l+1)
Rational falling_factorial(const Rational& x, unsigned ell);
BigInt binomial(unsigned n, unsigned k);

/// Signless Stirling numbers of the first kind s(l, k) for l <= l_max, from
/// s(l+1, k) = s(l, k-1) + l s(l, k).
class StirlingTable {
 public:
  static constexpr unsigned kDefaultMax = 20;

  explicit StirlingTable(unsigned l_max = kDefaultMax);

  const BigInt& operator()(unsigned ell, unsigned k) const;
  unsigned max_order() const { return l_max_; }

 private:
  unsigned l_max_;
  std::vector<std::vector<BigInt>> rows_;
};

BigInt stirling_unsigned(unsigned ell, unsigned k);

// l s(l, i) against sum_{k=i}^{l} s(l, k) C(k, i-1).
IdentityCheck verify_stirling_identity(unsigned ell, unsigned i);

/// One-step check of the descendant martingale for m = 1: with
/// beta = (1+delta)/(2+delta), Z = X + gamma/(2+delta) and p = Z/(t+beta),
/// compares p (Z+1)^(l) + (1-p) Z^(l) with ((t+beta+l)/(t+beta)) Z^(l).
/// gamma must be 0 or -1; throws PreconditionError when p is not in [0, 1].
IdentityCheck verify_martingale_step(std::uint64_t t, std::uint64_t x, int gamma,
                                     const Rational& delta, unsigned ell);

// Law {P_m(a)}_{a=0..m} of the number of selections, among m loop-free ones,
// that land in a descendant set of size X and total degree Y at time t.
std::vector<Rational> step_law_exact(std::uint64_t t, std::uint32_t m, const Rational& delta,
                                     std::uint64_t x, std::uint64_t y);

// The same law by enumerating all 2^m hit/miss sequences with their
// sequential probabilities.
std::vector<Rational> enumeration_oracle(std::uint64_t t, std::uint32_t m,
                                         const Rational& delta, std::uint64_t x,
                                         std::uint64_t y);

// sum_a (a)_mu P_m(a) against (m)_mu (Y + delta X)^(mu) / ((2m+delta) t)^(mu).
IdentityCheck factorial_moments_check(std::uint64_t t, std::uint32_t m, const Rational& delta,
                                      std::uint64_t x, std::uint64_t y, unsigned mu);

// Probability that none of the m selections of vertex t+1 is a loop.
Rational loop_free_factor(std::uint64_t t, std::uint32_t m, const Rational& delta);
// C with 1 - loop_free_factor(t, m, delta) <= C / t for all t >= 1.
Rational loop_free_bound_constant(std::uint32_t m, const Rational& delta);

struct ExpectedIncrements {
  Rational dx;
  Rational dy;

  friend bool operator==(const ExpectedIncrements&, const ExpectedIncrements&) = default;
};

// Closed forms for E[X(t+1) - X(t)] and E[Y(t+1) - Y(t)] without loops.
ExpectedIncrements expected_increments_exact(std::uint64_t t, std::uint32_t m,
                                             const Rational& delta, std::uint64_t x,
                                             std::uint64_t y);
// The same expectations summed directly over step_law_exact.
ExpectedIncrements expected_increments_from_law(std::uint64_t t, std::uint32_t m,
                                                const Rational& delta, std::uint64_t x,
                                                std::uint64_t y);

struct SuiteResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> failure_details;  // first few only

  bool passed() const { return cases > 0 && failures == 0; }
  void record(bool ok, const std::string& detail);
};

// The delta values exercised by the exhaustive suites: -1/2, 0, 1, 7/3.
std::vector<Rational> standard_deltas();

SuiteResult run_martingale_suite(std::uint64_t t_max = 30, unsigned ell_max = 6);
SuiteResult run_stirling_suite(unsigned ell_max = 10);
// step_law_exact vs enumeration_oracle, factorial moments and expected
// increments over every feasible (t, m, X, Y).
SuiteResult run_steplaw_suite(std::uint64_t t_max = 6, std::uint32_t m_max = 3);

}  // namespace agebias

#endif  // AGEBIAS_EXACT_HPP_
