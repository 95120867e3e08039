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

#ifndef AGEBIAS_DELTA_HPP_
#define AGEBIAS_DELTA_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace agebias {

// Raised for invalid process or experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The attachment shift as an exact rational num/den with den >= 1 and
/// gcd(|num|, den) = 1.
struct Delta {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Delta() = default;
  Delta(std::int64_t numerator, std::int64_t denominator = 1);

  // Accepts "p/q", an integer, or a finite decimal such as "-1.25".
  static Delta parse(std::string_view text);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  // delta / k, exact.
  Delta divided_by(std::int64_t k) const;

  // delta >= -m, exactly.
  bool at_least_minus(std::int64_t m) const;

  friend bool operator==(const Delta&, const Delta&) = default;
};

}  // namespace agebias

#endif  // AGEBIAS_DELTA_HPP_
