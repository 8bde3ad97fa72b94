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

#include "hbsnoc/destination_set.h"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace hbsnoc {

DestinationSet DestinationSet::FromMembers(std::vector<CoreIndex> members,
                                           CoreIndex core_count) {
  if (members.empty()) {
    throw std::invalid_argument("destination set must not be empty");
  }
  std::sort(members.begin(), members.end());
  if (auto dup = std::adjacent_find(members.begin(), members.end());
      dup != members.end()) {
    throw std::invalid_argument("duplicate destination core " +
                                std::to_string(*dup));
  }
  if (members.back() >= core_count) {
    throw std::invalid_argument("destination core " +
                                std::to_string(members.back()) +
                                " out of range for " +
                                std::to_string(core_count) + " cores");
  }
  return DestinationSet(std::move(members));
}

DestinationSet DestinationSet::All(CoreIndex core_count) {
  if (core_count == 0) {
    throw std::invalid_argument("destination set must not be empty");
  }
  std::vector<CoreIndex> members(core_count);
  std::iota(members.begin(), members.end(), CoreIndex{0});
  return DestinationSet(std::move(members));
}

DestinationSet DestinationSet::FromSortedUnique(std::vector<CoreIndex> members) {
  assert(!members.empty());
  assert(std::adjacent_find(members.begin(), members.end(),
                            std::greater_equal<>()) == members.end());
  return DestinationSet(std::move(members));
}

bool DestinationSet::contains(CoreIndex core) const {
  return std::binary_search(members_.begin(), members_.end(), core);
}

bool DestinationSet::IsSubsetOf(const DestinationSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

std::string DestinationSet::ToString() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(members_[i]);
  }
  out += '}';
  return out;
}

std::vector<CoreIndex> ParseCoreList(std::string_view text) {
  std::vector<CoreIndex> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    CoreIndex value = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw std::invalid_argument("malformed core index '" + std::string(item) +
                                  "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace hbsnoc
