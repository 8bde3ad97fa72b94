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

#include "hbsnoc/tree_config.h"

#include <bit>
#include <stdexcept>
#include <string>

namespace hbsnoc {

TreeConfig::TreeConfig(int fan_out, int levels)
    : fan_out_(fan_out), levels_(levels), core_count_(1) {
  if (fan_out < 2 || fan_out > kMaxFanOut) {
    throw std::invalid_argument("fan_out must be in [2, " +
                                std::to_string(kMaxFanOut) + "], got " +
                                std::to_string(fan_out));
  }
  if (levels < 1) {
    throw std::invalid_argument("levels must be >= 1, got " +
                                std::to_string(levels));
  }
  std::uint64_t n = 1;
  for (int i = 0; i < levels; ++i) {
    n *= static_cast<std::uint64_t>(fan_out);
    if (n > kMaxCoreCount) {
      throw std::invalid_argument(
          "core count " + std::to_string(fan_out) + "^" +
          std::to_string(levels) + " exceeds the supported maximum of " +
          std::to_string(kMaxCoreCount));
    }
  }
  core_count_ = static_cast<CoreIndex>(n);
  CoreIndex span = 1;
  for (int d = levels; d >= 0; --d) {
    spans_[static_cast<std::size_t>(d)] = span;
    span *= static_cast<CoreIndex>(fan_out);
  }
}

CorePath PathOf(CoreIndex index, const TreeConfig& cfg) {
  if (index >= cfg.core_count()) {
    throw std::out_of_range("core index " + std::to_string(index) +
                            " out of range for " +
                            std::to_string(cfg.core_count()) + " cores");
  }
  CorePath path;
  path.digits.resize(static_cast<std::size_t>(cfg.levels()));
  const auto k = static_cast<CoreIndex>(cfg.fan_out());
  for (int i = cfg.levels() - 1; i >= 0; --i) {
    path.digits[static_cast<std::size_t>(i)] = static_cast<int>(index % k);
    index /= k;
  }
  return path;
}

CoreIndex IndexOf(const CorePath& path, const TreeConfig& cfg) {
  if (path.digits.size() != static_cast<std::size_t>(cfg.levels())) {
    throw std::invalid_argument("path has " +
                                std::to_string(path.digits.size()) +
                                " digits, expected " +
                                std::to_string(cfg.levels()));
  }
  CoreIndex index = 0;
  for (int d : path.digits) {
    if (d < 0 || d >= cfg.fan_out()) {
      throw std::invalid_argument("path digit " + std::to_string(d) +
                                  " outside [0, " +
                                  std::to_string(cfg.fan_out()) + ")");
    }
    index = index * static_cast<CoreIndex>(cfg.fan_out()) +
            static_cast<CoreIndex>(d);
  }
  return index;
}

int FloorLog2(std::uint64_t x) {
  return 63 - std::countl_zero(x);
}

int CeilLog2(std::uint64_t x) {
  return x <= 1 ? 0 : FloorLog2(x - 1) + 1;
}

}  // namespace hbsnoc
