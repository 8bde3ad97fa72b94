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

#include "hbsnoc/router.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace hbsnoc {
namespace {

bool AnyInRange(const boost::dynamic_bitset<>& mask, std::size_t lo,
                std::size_t hi) {
  const std::size_t first = lo == 0 ? mask.find_first() : mask.find_next(lo - 1);
  return first != boost::dynamic_bitset<>::npos && first < hi;
}

class Descender {
 public:
  Descender(const Topology& topo, RouteResult& result)
      : topo_(topo), cfg_(topo.config()), result_(result) {}

  // Forks the packet down from the switch at (depth, prefix) holding the
  // given routing field state.
  void Descend(int depth, std::uint32_t prefix, const MulticastAddress& field) {
    const auto k = static_cast<std::uint32_t>(cfg_.fan_out());
    std::uint64_t head = 0;
    std::uint64_t ports = 0;
    MulticastAddress forwarded;
    if (const auto* hbs = std::get_if<HbsAddress>(&field)) {
      head = hbs->masks.front();
      ports = head;
      forwarded = RotateHbs(*hbs);
    } else if (const auto* sym = std::get_if<SymbolAddress>(&field)) {
      const int b = FloorLog2(k);
      for (int j = 0; j < b; ++j) {
        head = (head << 2) |
               static_cast<std::uint64_t>(sym->symbols[static_cast<std::size_t>(j)]);
      }
      for (std::uint32_t d = 0; d < k; ++d) {
        bool match = true;
        for (int j = 0; j < b && match; ++j) {
          const bool bit = (d >> (b - 1 - j)) & 1;
          const Symbol s = sym->symbols[static_cast<std::size_t>(j)];
          match = !((s == Symbol::kZero && bit) || (s == Symbol::kOne && !bit));
        }
        if (match) ports |= std::uint64_t{1} << d;
      }
      forwarded = RotateSymbols(*sym, b);
    } else {
      const auto& fbs = std::get<FbsAddress>(field);
      const CoreIndex span = cfg_.SubtreeSpan(depth + 1);
      for (std::uint32_t d = 0; d < k; ++d) {
        const std::size_t lo = static_cast<std::size_t>(prefix * k + d) * span;
        if (AnyInRange(fbs.mask, lo, lo + span)) ports |= std::uint64_t{1} << d;
      }
      head = ports;
      forwarded = field;
    }

    result_.decisions.push_back(
        SwitchDecision{topo_.SwitchAt(depth, prefix), depth, head, ports});
    for (std::uint64_t m = ports; m != 0; m &= m - 1) {
      const std::uint32_t child =
          prefix * k + static_cast<std::uint32_t>(std::countr_zero(m));
      result_.traversals.push_back(
          LinkTraversal{topo_.LinkAbove(depth + 1, child), Direction::kDown, 0});
      if (depth + 1 == cfg_.levels()) {
        result_.deliveries.push_back(child);
      } else {
        Descend(depth + 1, child, forwarded);
      }
    }
  }

 private:
  const Topology& topo_;
  const TreeConfig& cfg_;
  RouteResult& result_;
};

// Number of leading path digits shared by `a` and `b`.
int SharedPrefixDepth(CoreIndex a, CoreIndex b, const TreeConfig& cfg) {
  int depth = 0;
  while (depth < cfg.levels() &&
         a / cfg.SubtreeSpan(depth + 1) == b / cfg.SubtreeSpan(depth + 1)) {
    ++depth;
  }
  return depth;
}

void ClimbTo(int turn_depth, CoreIndex source, std::uint32_t packet,
             const Topology& topo, RouteResult& result) {
  const TreeConfig& cfg = topo.config();
  for (int d = cfg.levels(); d > turn_depth; --d) {
    result.traversals.push_back(LinkTraversal{
        topo.LinkAbove(d, source / cfg.SubtreeSpan(d)), Direction::kUp, packet});
  }
}

}  // namespace

Packet MakePacket(MulticastAddress routing_field, std::uint32_t source_tag,
                  int tag_bits, const TreeConfig& cfg) {
  ValidateAddress(routing_field, cfg);
  if (tag_bits < 1 || tag_bits > 32) {
    throw std::invalid_argument("tag_bits must be in [1, 32], got " +
                                std::to_string(tag_bits));
  }
  if (tag_bits < 32 && (source_tag >> tag_bits) != 0) {
    throw std::invalid_argument("source tag " + std::to_string(source_tag) +
                                " does not fit in " + std::to_string(tag_bits) +
                                " bits");
  }
  const Scheme scheme = SchemeOf(routing_field);
  const int routing_bits = RoutingBitWidthOf(scheme, cfg).bits;
  return Packet{std::move(routing_field), source_tag, routing_bits + tag_bits};
}

RouteResult RouteMulticast(const Packet& packet, CoreIndex source,
                           const Topology& topo, Turnaround turnaround) {
  const TreeConfig& cfg = topo.config();
  if (packet.scheme() == Scheme::kUnicast) {
    throw std::invalid_argument(
        "unicast lists are routed with RouteUnicastBatch");
  }
  ValidateAddress(packet.routing_field, cfg);
  if (source >= cfg.core_count()) {
    throw std::invalid_argument("source core " + std::to_string(source) +
                                " out of range");
  }

  int turn_depth = 0;
  if (turnaround == Turnaround::kLowestCommonAncestor) {
    const DestinationSet cover = CoveredSet(packet.routing_field, cfg);
    turn_depth = std::min({SharedPrefixDepth(source, cover.members().front(), cfg),
                           SharedPrefixDepth(source, cover.max(), cfg),
                           cfg.levels() - 1});
  }

  RouteResult result;
  result.packets = 1;
  ClimbTo(turn_depth, source, 0, topo, result);

  // Levels above the turn switch are consumed implicitly by the climb.
  MulticastAddress field = packet.routing_field;
  if (turn_depth > 0) {
    if (auto* hbs = std::get_if<HbsAddress>(&field)) {
      for (int i = 0; i < turn_depth; ++i) *hbs = RotateHbs(*hbs);
    } else if (auto* sym = std::get_if<SymbolAddress>(&field)) {
      *sym = RotateSymbols(*sym, turn_depth * FloorLog2(cfg.fan_out()));
    }
  }
  Descender(topo, result)
      .Descend(turn_depth, source / cfg.SubtreeSpan(turn_depth), field);
  return result;
}

RouteResult RouteUnicastBatch(const UnicastAddress& addr, CoreIndex source,
                              const Topology& topo) {
  const TreeConfig& cfg = topo.config();
  ValidateAddress(addr, cfg);
  if (source >= cfg.core_count()) {
    throw std::invalid_argument("source core " + std::to_string(source) +
                                " out of range");
  }
  RouteResult result;
  for (std::uint32_t p = 0; p < addr.targets.size(); ++p) {
    const CoreIndex target = addr.targets[p];
    const int turn_depth =
        std::min(SharedPrefixDepth(source, target, cfg), cfg.levels() - 1);
    ClimbTo(turn_depth, source, p, topo, result);
    for (int d = turn_depth + 1; d <= cfg.levels(); ++d) {
      result.traversals.push_back(LinkTraversal{
          topo.LinkAbove(d, target / cfg.SubtreeSpan(d)), Direction::kDown, p});
    }
    result.deliveries.push_back(target);
    ++result.packets;
  }
  return result;
}

std::vector<int> IllegalDivergenceLevels(const RouteResult& route,
                                         const DestinationSet& dests,
                                         const Topology& topo) {
  const TreeConfig& cfg = topo.config();
  auto subtree_has_dest = [&](int depth, std::uint32_t prefix) {
    const auto [lo, hi] = topo.SubtreeCores(depth, prefix);
    auto it = std::lower_bound(dests.begin(), dests.end(), lo);
    return it != dests.end() && *it < hi;
  };
  std::vector<int> levels;
  for (CoreIndex core : route.deliveries) {
    if (dests.contains(core)) continue;
    for (int d = 1; d <= cfg.levels(); ++d) {
      if (!subtree_has_dest(d, core / cfg.SubtreeSpan(d))) {
        levels.push_back(cfg.levels() - (d - 1));
        break;
      }
    }
  }
  return levels;
}

}  // namespace hbsnoc
