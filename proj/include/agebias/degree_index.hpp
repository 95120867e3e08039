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

#ifndef AGEBIAS_DEGREE_INDEX_HPP_
#define AGEBIAS_DEGREE_INDEX_HPP_

#include <bit>
#include <cstdint>
#include <vector>

namespace agebias {

/// Binary indexed tree over vertex degrees (1-based) that grows by appending.
///
/// Besides point update and prefix sums it answers the weighted search used by
/// the attachment sampler: with prefix weight W(k) = scale * S(k) + k * offset,
/// where S(k) is the prefix degree sum, find the smallest k with W(k) > u.
/// W must be nondecreasing in k, i.e. scale * d + offset >= 0 for all degrees.
class DegreeIndex {
 public:
  DegreeIndex() : tree_(1, 0) {}

  void reserve(std::size_t n) { tree_.reserve(n + 1); }
  std::size_t size() const { return tree_.size() - 1; }

  // Appends vertex size()+1 with the given degree.
  void push_back(std::uint64_t degree) {
    const std::size_t k = tree_.size();
    const std::size_t low = k & (~k + 1);
    // Node k covers (k - low, k].
    tree_.push_back(degree + prefix(k - 1) - prefix(k - low));
  }

  void add(std::size_t k, std::uint64_t amount) {
    for (; k < tree_.size(); k += k & (~k + 1)) tree_[k] += amount;
  }

  std::uint64_t prefix(std::size_t k) const {
    std::uint64_t sum = 0;
    for (; k > 0; k &= k - 1) sum += tree_[k];
    return sum;
  }

  std::size_t find(__int128 u, __int128 scale, __int128 offset) const {
    const std::size_t n = size();
    std::size_t pos = 0;
    std::uint64_t acc = 0;
    for (std::size_t step = std::bit_floor(n); step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next > n) continue;
      const std::uint64_t candidate = acc + tree_[next];
      if (scale * candidate + offset * static_cast<__int128>(next) <= u) {
        pos = next;
        acc = candidate;
      }
    }
    return pos + 1;
  }

 private:
  std::vector<std::uint64_t> tree_;
};

}  // namespace agebias

#endif  // AGEBIAS_DEGREE_INDEX_HPP_
