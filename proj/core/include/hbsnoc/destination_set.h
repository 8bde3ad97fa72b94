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

#ifndef HBSNOC_DESTINATION_SET_H_
#define HBSNOC_DESTINATION_SET_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hbsnoc/tree_config.h"

namespace hbsnoc {

// A nonempty set of distinct core indices, kept in ascending order.
class DestinationSet {
 public:
  // Sorts `members`. Throws std::invalid_argument if the set is empty,
  // contains a duplicate, or has a member >= core_count.
  static DestinationSet FromMembers(std::vector<CoreIndex> members,
                                    CoreIndex core_count);

  // All cores [0, core_count).
  static DestinationSet All(CoreIndex core_count);

  // Trusted construction from a strictly ascending, nonempty vector. Only
  // checked in debug builds.
  static DestinationSet FromSortedUnique(std::vector<CoreIndex> members);

  const std::vector<CoreIndex>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  CoreIndex max() const { return members_.back(); }
  bool contains(CoreIndex core) const;
  bool IsSubsetOf(const DestinationSet& other) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  // "{0,1,4,5}"
  std::string ToString() const;

  friend bool operator==(const DestinationSet&, const DestinationSet&) =
      default;
  friend auto operator<=>(const DestinationSet&, const DestinationSet&) =
      default;

 private:
  explicit DestinationSet(std::vector<CoreIndex> members)
      : members_(std::move(members)) {}

  std::vector<CoreIndex> members_;
};

// Parses a comma-separated list of decimal core indices, e.g. "0,5,12".
// Throws std::invalid_argument on malformed input.
std::vector<CoreIndex> ParseCoreList(std::string_view text);

}  // namespace hbsnoc

#endif  // HBSNOC_DESTINATION_SET_H_
