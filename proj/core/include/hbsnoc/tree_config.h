// Copyright 2026 The hbsnoc Authors
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

#ifndef HBSNOC_TREE_CONFIG_H_
#define HBSNOC_TREE_CONFIG_H_

#include <array>
#include <cstdint>
#include <vector>

namespace hbsnoc {

// Leaf (neural core) index in [0, N).
using CoreIndex = std::uint32_t;

// Largest supported fan-out. Per-level HBS masks are stored in 64-bit words.
inline constexpr int kMaxFanOut = 64;

// Largest supported core count. FBS masks are N bits wide.
inline constexpr std::uint64_t kMaxCoreCount = std::uint64_t{1} << 20;

// Shape of a uniform k-ary tree: `fan_out` children per switch, `levels`
// switch levels, and N = fan_out^levels leaf cores.
class TreeConfig {
 public:
  // Throws std::invalid_argument for fan_out outside [2, kMaxFanOut],
  // levels < 1, or a core count above kMaxCoreCount.
  TreeConfig(int fan_out, int levels);

  int fan_out() const { return fan_out_; }
  int levels() const { return levels_; }
  CoreIndex core_count() const { return core_count_; }

  bool core_count_is_power_of_two() const {
    return (core_count_ & (core_count_ - 1)) == 0;
  }

  // Cores below one node at `depth` (root is depth 0), i.e. k^(L-depth).
  CoreIndex SubtreeSpan(int depth) const {
    return spans_[static_cast<std::size_t>(depth)];
  }

  friend bool operator==(const TreeConfig&, const TreeConfig&) = default;

 private:
  int fan_out_;
  int levels_;
  CoreIndex core_count_;
  // spans_[d] = k^(L-d); at most 21 entries since N <= 2^20 and k >= 2.
  std::array<CoreIndex, 21> spans_{};
};

// Base-k digits of a core index, root-level digit first.
struct CorePath {
  std::vector<int> digits;

  friend bool operator==(const CorePath&, const CorePath&) = default;
};

// Throws std::out_of_range when index >= N.
CorePath PathOf(CoreIndex index, const TreeConfig& cfg);

// Throws std::invalid_argument when the path has the wrong length or a digit
// outside [0, k).
CoreIndex IndexOf(const CorePath& path, const TreeConfig& cfg);

// Digit of `index` at `depth` (0 = root-level branch). No range checks.
inline int DigitAt(CoreIndex index, int depth, const TreeConfig& cfg) {
  return static_cast<int>((index / cfg.SubtreeSpan(depth + 1)) %
                          static_cast<CoreIndex>(cfg.fan_out()));
}

// floor(log2(x)) for x >= 1.
int FloorLog2(std::uint64_t x);

// ceil(log2(x)) for x >= 1.
int CeilLog2(std::uint64_t x);

inline bool IsPowerOfTwo(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace hbsnoc

#endif  // HBSNOC_TREE_CONFIG_H_
