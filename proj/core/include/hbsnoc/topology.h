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

#ifndef HBSNOC_TOPOLOGY_H_
#define HBSNOC_TOPOLOGY_H_

#include <cstdint>
#include <optional>
#include <utility>

#include "hbsnoc/tree_config.h"

namespace hbsnoc {

using SwitchId = std::uint32_t;
using LinkId = std::uint32_t;

// A k-ary tree NoC. Every switch has one Up port and k Down ports; Down port
// d leads to the child whose path digit is d. Cores hang off the Down ports
// of the leaf-adjacent switches.
//
// Nodes are addressed by (depth, prefix): depth 0 is the root switch, depth
// L is the core layer, and prefix is the value of the first `depth` path
// digits. Switch ids are assigned breadth first starting at the root.
//
// Switch *level* follows the R1..RL naming: R1 switches are leaf-adjacent
// (depth L-1) and RL is the root. A link has the level of its parent switch,
// so level-1 links connect R1 switches to cores.
//
// Every link is identified by its child endpoint.
class Topology {
 public:
  explicit Topology(const TreeConfig& cfg);

  const TreeConfig& config() const { return cfg_; }

  // (k^L - 1) / (k - 1).
  std::uint32_t switch_count() const { return switch_count_; }
  // sum_{d=1..L} k^d; one per child node.
  std::uint32_t link_count() const { return link_count_; }

  SwitchId root() const { return 0; }
  SwitchId SwitchAt(int depth, std::uint32_t prefix) const;
  int SwitchDepth(SwitchId id) const;
  std::uint32_t SwitchPrefix(SwitchId id) const;
  int SwitchLevel(SwitchId id) const { return cfg_.levels() - SwitchDepth(id); }
  // Switch behind the Up port; nullopt for the root.
  std::optional<SwitchId> UpNeighbor(SwitchId id) const;

  // Link between the node at (child_depth, child_prefix), child_depth in
  // [1, L], and its parent switch.
  LinkId LinkAbove(int child_depth, std::uint32_t child_prefix) const;
  LinkId CoreLink(CoreIndex core) const { return LinkAbove(cfg_.levels(), core); }
  int LinkChildDepth(LinkId link) const;
  std::uint32_t LinkChildPrefix(LinkId link) const;
  SwitchId LinkParent(LinkId link) const;
  int LinkLevel(LinkId link) const {
    return cfg_.levels() - LinkChildDepth(link) + 1;
  }

  // Cores [first, last) below the node at (depth, prefix).
  std::pair<CoreIndex, CoreIndex> SubtreeCores(int depth,
                                               std::uint32_t prefix) const;

 private:
  TreeConfig cfg_;
  std::uint32_t switch_count_;
  std::uint32_t link_count_;
  // first_id_[d] = number of nodes at depths < d, for switch numbering;
  // first_link_[d] = number of child nodes at depths in [1, d).
  std::uint32_t first_id_[22] = {};
  std::uint32_t first_link_[22] = {};
};

inline Topology BuildTree(const TreeConfig& cfg) { return Topology(cfg); }

}  // namespace hbsnoc

#endif  // HBSNOC_TOPOLOGY_H_
