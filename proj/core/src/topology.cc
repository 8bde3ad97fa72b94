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

#include "hbsnoc/topology.h"

#include <stdexcept>
#include <string>

namespace hbsnoc {

Topology::Topology(const TreeConfig& cfg) : cfg_(cfg) {
  const int levels = cfg.levels();
  std::uint32_t nodes = 0;
  std::uint32_t links = 0;
  std::uint32_t width = 1;
  for (int d = 0; d <= levels; ++d) {
    first_id_[d] = nodes;
    first_link_[d] = links;
    nodes += width;
    if (d >= 1) links += width;
    width *= static_cast<std::uint32_t>(cfg.fan_out());
  }
  first_link_[levels + 1] = links;
  switch_count_ = first_id_[levels];
  link_count_ = links;
}

SwitchId Topology::SwitchAt(int depth, std::uint32_t prefix) const {
  if (depth < 0 || depth >= cfg_.levels()) {
    throw std::out_of_range("switch depth " + std::to_string(depth) +
                            " out of range");
  }
  if (prefix >= first_id_[depth + 1] - first_id_[depth]) {
    throw std::out_of_range("switch prefix " + std::to_string(prefix) +
                            " out of range at depth " + std::to_string(depth));
  }
  return first_id_[depth] + prefix;
}

int Topology::SwitchDepth(SwitchId id) const {
  if (id >= switch_count_) {
    throw std::out_of_range("switch id " + std::to_string(id) +
                            " out of range");
  }
  int d = 0;
  while (id >= first_id_[d + 1]) ++d;
  return d;
}

std::uint32_t Topology::SwitchPrefix(SwitchId id) const {
  return id - first_id_[SwitchDepth(id)];
}

std::optional<SwitchId> Topology::UpNeighbor(SwitchId id) const {
  const int depth = SwitchDepth(id);
  if (depth == 0) return std::nullopt;
  return SwitchAt(depth - 1,
                  SwitchPrefix(id) / static_cast<std::uint32_t>(cfg_.fan_out()));
}

LinkId Topology::LinkAbove(int child_depth, std::uint32_t child_prefix) const {
  if (child_depth < 1 || child_depth > cfg_.levels()) {
    throw std::out_of_range("link child depth " + std::to_string(child_depth) +
                            " out of range");
  }
  if (child_prefix >=
      first_link_[child_depth + 1] - first_link_[child_depth]) {
    throw std::out_of_range("link child prefix " +
                            std::to_string(child_prefix) + " out of range");
  }
  return first_link_[child_depth] + child_prefix;
}

int Topology::LinkChildDepth(LinkId link) const {
  if (link >= link_count_) {
    throw std::out_of_range("link id " + std::to_string(link) +
                            " out of range");
  }
  int d = 1;
  while (link >= first_link_[d + 1]) ++d;
  return d;
}

std::uint32_t Topology::LinkChildPrefix(LinkId link) const {
  return link - first_link_[LinkChildDepth(link)];
}

SwitchId Topology::LinkParent(LinkId link) const {
  const int depth = LinkChildDepth(link);
  return SwitchAt(depth - 1, LinkChildPrefix(link) /
                                 static_cast<std::uint32_t>(cfg_.fan_out()));
}

std::pair<CoreIndex, CoreIndex> Topology::SubtreeCores(
    int depth, std::uint32_t prefix) const {
  const CoreIndex span = cfg_.SubtreeSpan(depth);
  return {prefix * span, (prefix + 1) * span};
}

}  // namespace hbsnoc
