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

// Packet routing on the tree NoC.
//
// A multicast packet climbs from the source core to the turnaround switch
// through Up ports, then forks down. Every switch on the way down runs the
// same head-field logic:
//
//   HBS     the head k-bit mask selects Down ports; the field is rotated
//           left by one level before it is forwarded.
//   Symbol  the head log2(k) symbols expand to a digit subset; the field is
//           rotated left by log2(k) symbols.
//   FBS     Down port d is selected iff the mask slice of child d's subtree
//           is nonzero. The field is forwarded unchanged.
//
// After L downward hops the rotated field is back in its injected form.

#ifndef HBSNOC_ROUTER_H_
#define HBSNOC_ROUTER_H_

#include <cstdint>
#include <vector>

#include "hbsnoc/address.h"
#include "hbsnoc/destination_set.h"
#include "hbsnoc/topology.h"

namespace hbsnoc {

struct Packet {
  MulticastAddress routing_field;
  std::uint32_t source_tag = 0;
  // Routing width plus tag width; fixed for the packet's lifetime.
  int header_bits = 0;

  Scheme scheme() const { return SchemeOf(routing_field); }
};

// Validates the field against `cfg` and that the tag fits in `tag_bits`.
// For unicast lists the header is the width of one unicast packet.
Packet MakePacket(MulticastAddress routing_field, std::uint32_t source_tag,
                  int tag_bits, const TreeConfig& cfg);

enum class Turnaround {
  kRoot,                  // always climb to the root
  kLowestCommonAncestor,  // turn at the lowest switch above source and cover
};

enum class Direction : std::uint8_t { kUp, kDown };

struct LinkTraversal {
  LinkId link;
  Direction direction;
  std::uint32_t packet;  // index within a unicast batch; 0 for multicast

  friend bool operator==(const LinkTraversal&, const LinkTraversal&) = default;
};

// One Down-port decision taken during the downward phase.
struct SwitchDecision {
  SwitchId switch_id;
  int depth;
  // Field consumed by the switch: HBS head mask; Symbol head symbols packed
  // two bits each, first symbol most significant; FBS selected ports.
  std::uint64_t head_field;
  std::uint64_t selected_ports;
};

struct RouteResult {
  // One entry per packet copy reaching a core. Ascending for multicast;
  // list order for unicast batches.
  std::vector<CoreIndex> deliveries;
  std::vector<LinkTraversal> traversals;
  std::vector<SwitchDecision> decisions;
  std::uint32_t packets = 0;
};

// Routes one FBS, Symbol or HBS packet injected at `source`. Throws
// std::invalid_argument for a unicast field or a malformed address.
RouteResult RouteMulticast(const Packet& packet, CoreIndex source,
                           const Topology& topo,
                           Turnaround turnaround = Turnaround::kRoot);

// Routes one unicast packet per target, each turning at the lowest common
// ancestor of source and target. A packet addressed to its own source core
// turns at the R1 switch.
RouteResult RouteUnicastBatch(const UnicastAddress& addr, CoreIndex source,
                              const Topology& topo);

// For every delivery outside `dests`, the level (1 = R1, L = root) of the
// switch where the packet's downward path first enters a subtree holding no
// destination. One entry per illegal delivery, in delivery order.
std::vector<int> IllegalDivergenceLevels(const RouteResult& route,
                                         const DestinationSet& dests,
                                         const Topology& topo);

}  // namespace hbsnoc

#endif  // HBSNOC_ROUTER_H_
