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

#include "agebias/delta.hpp"

#include <charconv>
#include <numeric>

namespace agebias {
namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("delta: cannot parse '" + std::string(whole) +
                      "' (expected p/q, integer or decimal)");
  }
  return value;
}

}  // namespace

Delta::Delta(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw ConfigError("delta: zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num = numerator / g;
  den = denominator / g;
}

Delta Delta::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Delta(parse_int(text.substr(0, slash), text),
                 parse_int(text.substr(slash + 1), text));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.size() > 15 || frac_part.find_first_not_of("0123456789") !=
                                     std::string_view::npos) {
      throw ConfigError("delta: cannot parse '" + std::string(text) + "'");
    }
    const bool negative = !int_part.empty() && int_part.front() == '-';
    if (negative) int_part.remove_prefix(1);
    std::int64_t scale = 1;
    for (std::size_t k = 0; k < frac_part.size(); ++k) scale *= 10;
    const std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
    const std::int64_t frac = frac_part.empty() ? 0 : parse_int(frac_part, text);
    if (whole < 0) throw ConfigError("delta: cannot parse '" + std::string(text) + "'");
    const std::int64_t magnitude = whole * scale + frac;
    return Delta(negative ? -magnitude : magnitude, scale);
  }
  return Delta(parse_int(text, text), 1);
}

std::string Delta::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Delta Delta::divided_by(std::int64_t k) const {
  if (k <= 0) throw ConfigError("delta: divisor must be positive");
  return Delta(num, den * k);
}

bool Delta::at_least_minus(std::int64_t m) const {
  return static_cast<__int128>(num) >= -static_cast<__int128>(m) * den;
}

}  // namespace agebias
