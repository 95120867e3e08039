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

#include "doctest.h"

#include "agebias/delta.hpp"

using agebias::ConfigError;
using agebias::Delta;

TEST_SUITE("delta") {

TEST_CASE("parse fractions, integers and decimals") {
  CHECK(Delta::parse("1/2") == Delta(1, 2));
  CHECK(Delta::parse("7/3") == Delta(7, 3));
  CHECK(Delta::parse("-1/2") == Delta(-1, 2));
  CHECK(Delta::parse("4/6") == Delta(2, 3));
  CHECK(Delta::parse("3") == Delta(3));
  CHECK(Delta::parse("-1") == Delta(-1));
  CHECK(Delta::parse("0.5") == Delta(1, 2));
  CHECK(Delta::parse("-1.25") == Delta(-5, 4));
  CHECK(Delta::parse("0") == Delta());
}

TEST_CASE("normalisation keeps the denominator positive") {
  const Delta d(3, -6);
  CHECK(d.num == -1);
  CHECK(d.den == 2);
  CHECK_THROWS_AS(Delta(1, 0), ConfigError);
}

TEST_CASE("malformed text is rejected") {
  for (const char* bad : {"", "abc", "1/", "/2", "1/0", "1.2.3", "1e3", "1/2/3"}) {
    CHECK_THROWS_AS(Delta::parse(bad), ConfigError);
  }
}

TEST_CASE("exact helpers") {
  CHECK(Delta(1, 2).divided_by(2) == Delta(1, 4));
  CHECK(Delta(2).divided_by(4) == Delta(1, 2));
  CHECK(Delta(-1).at_least_minus(1));
  CHECK_FALSE(Delta(-3, 2).at_least_minus(1));
  CHECK(Delta(-3, 2).at_least_minus(2));
  CHECK(Delta(7, 3).to_string() == "7/3");
  CHECK(Delta(2).to_string() == "2");
  CHECK(Delta(1, 4).to_double() == 0.25);
}

}
