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
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracle.h"

namespace hbsnoc {
namespace {

DestinationSet Set(std::vector<CoreIndex> members, CoreIndex n = 16) {
  return DestinationSet::FromMembers(std::move(members), n);
}

Packet PacketFor(Scheme scheme, const DestinationSet& dests,
                 const TreeConfig& cfg, std::uint32_t tag = 0) {
  return MakePacket(Encode(scheme, dests, cfg), tag, 10, cfg);
}

std::vector<LinkId> Links(const RouteResult& r, Direction dir) {
  std::vector<LinkId> out;
  for (const auto& t : r.traversals) {
    if (t.direction == dir) out.push_back(t.link);
  }
  return out;
}

// Edges of the union of root-to-leaf paths, from digit prefixes.
std::set<LinkId> PathUnion(const std::vector<CoreIndex>& leaves,
                           const Topology& topo) {
  const TreeConfig& cfg = topo.config();
  std::set<LinkId> out;
  for (CoreIndex c : leaves) {
    const auto digits = oracle::Digits(c, cfg.fan_out(), cfg.levels());
    std::uint32_t prefix = 0;
    for (int d = 1; d <= cfg.levels(); ++d) {
      prefix = prefix * static_cast<std::uint32_t>(cfg.fan_out()) +
               static_cast<std::uint32_t>(digits[static_cast<std::size_t>(d - 1)]);
      out.insert(topo.LinkAbove(d, prefix));
    }
  }
  return out;
}

const TreeConfig kTree16(4, 2);

TEST(MakePacketTest, HeaderWidths) {
  const auto d = Set({1, 2});
  EXPECT_EQ(PacketFor(Scheme::kFbs, d, kTree16).header_bits, 26);
  EXPECT_EQ(PacketFor(Scheme::kSymbol, d, kTree16).header_bits, 18);
  EXPECT_EQ(PacketFor(Scheme::kHbs, d, kTree16).header_bits, 18);
  EXPECT_EQ(PacketFor(Scheme::kUnicast, d, kTree16).header_bits, 14);
}

TEST(MakePacketTest, RejectsOversizedTag) {
  EXPECT_THROW(MakePacket(EncodeHbs(Set({1}), kTree16), 1024, 10, kTree16),
               std::invalid_argument);
  EXPECT_NO_THROW(MakePacket(EncodeHbs(Set({1}), kTree16), 1023, 10, kTree16));
  EXPECT_THROW(MakePacket(EncodeHbs(Set({1}), kTree16), 0, 0, kTree16),
               std::invalid_argument);
}

TEST(RouteMulticastTest, HbsTwoRegionExample) {
  const Topology topo(kTree16);
  const Packet p = MakePacket(HbsAddress{{0b0110, 0b0001}}, 0, 10, kTree16);
  const RouteResult r = RouteMulticast(p, 0, topo);
  EXPECT_EQ(r.deliveries, (std::vector<CoreIndex>{4, 8}));
  ASSERT_EQ(r.traversals.size(), 6u);
  EXPECT_EQ(Links(r, Direction::kUp),
            (std::vector<LinkId>{topo.CoreLink(0), topo.LinkAbove(1, 0)}));
  const auto down = Links(r, Direction::kDown);
  EXPECT_EQ(std::set<LinkId>(down.begin(), down.end()),
            (std::set<LinkId>{topo.LinkAbove(1, 1), topo.LinkAbove(1, 2),
                              topo.CoreLink(4), topo.CoreLink(8)}));
  EXPECT_EQ(r.packets, 1u);
}

TEST(RouteMulticastTest, SiblingStillTransitsRoot) {
  const Topology topo(kTree16);
  const RouteResult r =
      RouteMulticast(PacketFor(Scheme::kFbs, Set({1}), kTree16), 0, topo);
  EXPECT_EQ(r.deliveries, (std::vector<CoreIndex>{1}));
  EXPECT_EQ(r.traversals.size(), 4u);
}

TEST(RouteMulticastTest, BroadcastUsesEveryLinkOnceDownward) {
  const Topology topo(kTree16);
  const RouteResult r = RouteMulticast(
      PacketFor(Scheme::kHbs, DestinationSet::All(16), kTree16), 5, topo);
  EXPECT_EQ(r.deliveries.size(), 16u);
  const auto down = Links(r, Direction::kDown);
  EXPECT_EQ(down.size(), topo.link_count());
  EXPECT_EQ(std::set<LinkId>(down.begin(), down.end()).size(),
            topo.link_count());
}

TEST(RouteMulticastTest, SourceReceivesOwnPacketWhenCovered) {
  const Topology topo(kTree16);
  const RouteResult r =
      RouteMulticast(PacketFor(Scheme::kHbs, Set({3}), kTree16), 3, topo);
  EXPECT_EQ(r.deliveries, (std::vector<CoreIndex>{3}));
  EXPECT_EQ(r.traversals.size(), 4u);
}

TEST(RouteMulticastTest, RejectsUnicastAndBadSource) {
  const Topology topo(kTree16);
  EXPECT_THROW(
      RouteMulticast(PacketFor(Scheme::kUnicast, Set({1}), kTree16), 0, topo),
      std::invalid_argument);
  EXPECT_THROW(
      RouteMulticast(PacketFor(Scheme::kHbs, Set({1}), kTree16), 16, topo),
      std::invalid_argument);
}

// Deliveries equal the cover; each phase uses distinct links; the downward
// tree is exactly the union of root-to-leaf paths; the upward phase is the
// source's L-link path.
TEST(RouteMulticastTest, ExactnessAgainstPathUnionOracle) {
  std::mt19937_64 rng(41);
  for (auto [k, levels] : {std::pair{4, 2}, {4, 3}, {2, 4}, {3, 3}, {8, 2}}) {
    const TreeConfig cfg(k, levels);
    const Topology topo(cfg);
    std::uniform_int_distribution<CoreIndex> core(0, cfg.core_count() - 1);
    for (int i = 0; i < 400; ++i) {
      const auto dests = oracle::RandomDestinations(rng, cfg.core_count());
      const CoreIndex source = core(rng);
      for (Scheme s : {Scheme::kFbs, Scheme::kSymbol, Scheme::kHbs}) {
        if (s == Scheme::kSymbol && !cfg.core_count_is_power_of_two()) continue;
        const Packet p = PacketFor(s, dests, cfg);
        const RouteResult r = RouteMulticast(p, source, topo);
        const auto cover = CoveredSet(p.routing_field, cfg);
        ASSERT_EQ(r.deliveries, cover.members());
        const auto up = Links(r, Direction::kUp);
        const auto down = Links(r, Direction::kDown);
        ASSERT_EQ(up.size(), static_cast<std::size_t>(levels));
        ASSERT_EQ(up.front(), topo.CoreLink(source));
        const std::set<LinkId> down_set(down.begin(), down.end());
        ASSERT_EQ(down_set.size(), down.size());
        ASSERT_EQ(down_set, PathUnion(cover.members(), topo));
      }
    }
  }
}

// Every switch at a given depth reads the same head field, whichever
// branch delivered the packet, and that field is the address's entry for
// the depth.
TEST(RouteMulticastTest, ConsumedHeadFieldIsPathIndependent) {
  std::mt19937_64 rng(43);
  for (auto [k, levels] : {std::pair{4, 2}, {2, 5}, {4, 3}, {8, 2}}) {
    const TreeConfig cfg(k, levels);
    const Topology topo(cfg);
    const int b = FloorLog2(static_cast<std::uint64_t>(k));
    for (int i = 0; i < 200; ++i) {
      const auto dests = oracle::RandomDestinations(rng, cfg.core_count());
      const HbsAddress hbs = EncodeHbs(dests, cfg);
      const SymbolAddress sym = EncodeSymbol(dests, cfg);
      const RouteResult rh = RouteMulticast(MakePacket(hbs, 0, 10, cfg), 0, topo);
      for (const auto& d : rh.decisions) {
        ASSERT_EQ(d.head_field, hbs.masks[static_cast<std::size_t>(d.depth)]);
        ASSERT_EQ(d.selected_ports, d.head_field);
      }
      const RouteResult rs = RouteMulticast(MakePacket(sym, 0, 10, cfg), 0, topo);
      std::map<int, std::uint64_t> by_depth;
      for (const auto& d : rs.decisions) {
        std::uint64_t expected = 0;
        for (int j = 0; j < b; ++j) {
          expected = (expected << 2) |
                     static_cast<std::uint64_t>(
                         sym.symbols[static_cast<std::size_t>(d.depth * b + j)]);
        }
        ASSERT_EQ(d.head_field, expected);
        auto [it, inserted] = by_depth.emplace(d.depth, d.selected_ports);
        ASSERT_EQ(it->second, d.selected_ports);
      }
    }
  }
}

TEST(RouteMulticastTest, LcaTurnaroundDeliversSameCoverWithFewerLinks) {
  std::mt19937_64 rng(47);
  const TreeConfig cfg(4, 3);
  const Topology topo(cfg);
  std::uniform_int_distribution<CoreIndex> core(0, 63);
  bool saved = false;
  for (int i = 0; i < 500; ++i) {
    const auto dests = oracle::RandomDestinations(rng, 64);
    const CoreIndex source = core(rng);
    for (Scheme s : {Scheme::kFbs, Scheme::kSymbol, Scheme::kHbs}) {
      const Packet p = PacketFor(s, dests, cfg);
      const auto root = RouteMulticast(p, source, topo, Turnaround::kRoot);
      const auto lca =
          RouteMulticast(p, source, topo, Turnaround::kLowestCommonAncestor);
      ASSERT_EQ(lca.deliveries, root.deliveries);
      ASSERT_LE(lca.traversals.size(), root.traversals.size());
      saved |= lca.traversals.size() < root.traversals.size();
    }
  }
  const auto local = Set({1}, 64);
  const auto r = RouteMulticast(PacketFor(Scheme::kHbs, local, cfg), 0, topo,
                                Turnaround::kLowestCommonAncestor);
  EXPECT_EQ(r.traversals.size(), 2u);
  EXPECT_TRUE(saved);
}

TEST(RouteUnicastBatchTest, Examples) {
  const Topology topo(kTree16);
  const auto sibling = RouteUnicastBatch(UnicastAddress{{1}}, 0, topo);
  EXPECT_EQ(sibling.traversals.size(), 2u);
  EXPECT_EQ(sibling.deliveries, (std::vector<CoreIndex>{1}));
  const auto remote = RouteUnicastBatch(UnicastAddress{{9}}, 0, topo);
  EXPECT_EQ(remote.traversals.size(), 4u);
  const auto all = RouteUnicastBatch(EncodeUnicast(DestinationSet::All(16)), 0, topo);
  EXPECT_EQ(all.packets, 16u);
  EXPECT_EQ(all.deliveries.size(), 16u);
  const auto self = RouteUnicastBatch(UnicastAddress{{0}}, 0, topo);
  EXPECT_EQ(self.traversals.size(), 2u);
}

TEST(RouteUnicastBatchTest, PacketsAreTaggedInOrder) {
  const Topology topo(kTree16);
  const auto r = RouteUnicastBatch(UnicastAddress{{1, 9}}, 0, topo);
  ASSERT_EQ(r.traversals.size(), 6u);
  EXPECT_EQ(r.traversals[0].packet, 0u);
  EXPECT_EQ(r.traversals[2].packet, 1u);
  EXPECT_EQ(r.traversals[5].packet, 1u);
}

// Holds for any set at L=2 with root turnaround, and at any depth once the
// multicast also turns at the lowest common ancestor.
TEST(RouteUnicastBatchTest, FbsNeverUsesMoreDownLinksThanUnicast) {
  std::mt19937_64 rng(53);
  for (auto [k, levels] : {std::pair{4, 2}, {8, 2}, {4, 3}, {2, 5}}) {
    const TreeConfig cfg(k, levels);
    const Topology topo(cfg);
    const Turnaround turn =
        levels == 2 ? Turnaround::kRoot : Turnaround::kLowestCommonAncestor;
    std::uniform_int_distribution<CoreIndex> core(0, cfg.core_count() - 1);
    for (int i = 0; i < 500; ++i) {
      const auto dests = oracle::RandomDestinations(rng, cfg.core_count());
      const CoreIndex source = core(rng);
      const auto fbs =
          RouteMulticast(PacketFor(Scheme::kFbs, dests, cfg), source, topo, turn);
      const auto uni = RouteUnicastBatch(EncodeUnicast(dests), source, topo);
      ASSERT_LE(Links(fbs, Direction::kDown).size(), uni.traversals.size());
      ASSERT_EQ(uni.deliveries, dests.members());
    }
  }
}

// With root turnaround below two levels a sibling target is cheaper by
// unicast, which may turn early.
TEST(RouteUnicastBatchTest, RootTurnaroundLosesToUnicastForLocalTargets) {
  const TreeConfig cfg(4, 3);
  const Topology topo(cfg);
  const auto fbs = RouteMulticast(
      PacketFor(Scheme::kFbs, Set({1}, 64), cfg), 0, topo);
  const auto uni = RouteUnicastBatch(UnicastAddress{{1}}, 0, topo);
  EXPECT_EQ(Links(fbs, Direction::kDown).size(), 3u);
  EXPECT_EQ(uni.traversals.size(), 2u);
}

TEST(IllegalDivergenceTest, HbsDivergesBelowRootSymbolCanAtRoot) {
  const Topology topo(kTree16);
  const auto dests = Set({0, 12});
  const auto sym = RouteMulticast(PacketFor(Scheme::kSymbol, dests, kTree16), 0, topo);
  const auto sym_levels = IllegalDivergenceLevels(sym, dests, topo);
  EXPECT_EQ(sym_levels, (std::vector<int>{2, 2}));  // cores 4 and 8
  const auto hbs = RouteMulticast(PacketFor(Scheme::kHbs, dests, kTree16), 0, topo);
  EXPECT_TRUE(IllegalDivergenceLevels(hbs, dests, topo).empty());

  const auto spread = Set({0, 5});
  const auto hbs2 = RouteMulticast(PacketFor(Scheme::kHbs, spread, kTree16), 0, topo);
  EXPECT_EQ(IllegalDivergenceLevels(hbs2, spread, topo),
            (std::vector<int>{1, 1}));  // cores 1 and 4
}

TEST(IllegalDivergenceTest, HbsNeverDivergesAtRootExhaustively) {
  const Topology topo(kTree16);
  for (std::uint64_t m = 1; m < (1u << 16); m += 7) {
    const auto dests = oracle::SetOf(m, 16);
    const auto r = RouteMulticast(PacketFor(Scheme::kHbs, dests, kTree16), 0, topo);
    for (int level : IllegalDivergenceLevels(r, dests, topo)) {
      ASSERT_EQ(level, 1) << dests.ToString();
    }
  }
}

}  // namespace
}  // namespace hbsnoc
