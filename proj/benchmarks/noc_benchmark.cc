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

// Packet routing and end-to-end simulation on the default 16-core tree.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hbsnoc/router.h"
#include "hbsnoc/simulator.h"
#include "hbsnoc/traffic.h"

namespace hbsnoc {
namespace {

const TreeConfig kTree(4, 2);

void BM_Route(benchmark::State& state, Scheme scheme) {
  const Topology topo(kTree);
  std::mt19937_64 rng(3);
  std::vector<Packet> packets;
  std::vector<CoreIndex> sources;
  for (int i = 0; i < 256; ++i) {
    std::vector<CoreIndex> members;
    for (CoreIndex c = 0; c < 16; ++c) {
      if (rng() % 4 == 0) members.push_back(c);
    }
    if (members.empty()) members.push_back(static_cast<CoreIndex>(i % 16));
    const DestinationSet d = DestinationSet::FromMembers(members, 16);
    packets.push_back(MakePacket(Encode(scheme, d, kTree), 0, 10, kTree));
    sources.push_back(static_cast<CoreIndex>(rng() % 16));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t j = i++ % packets.size();
    if (scheme == Scheme::kUnicast) {
      benchmark::DoNotOptimize(RouteUnicastBatch(
          std::get<UnicastAddress>(packets[j].routing_field), sources[j],
          topo));
    } else {
      benchmark::DoNotOptimize(RouteMulticast(packets[j], sources[j], topo));
    }
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_Route, fbs, Scheme::kFbs);
BENCHMARK_CAPTURE(BM_Route, symbol, Scheme::kSymbol);
BENCHMARK_CAPTURE(BM_Route, hbs, Scheme::kHbs);
BENCHMARK_CAPTURE(BM_Route, unicast, Scheme::kUnicast);

// One mapping of the default network over a 400-step trace.
void BM_Simulate(benchmark::State& state, Scheme scheme) {
  const NetworkSpec spec = NetworkSpec::Default();
  const Connectivity connectivity = GenerateConnectivity(spec, 1);
  const NeuronMapping mapping = MapNeurons(spec, kTree, MappingOptions{});
  const CoreLut lut = BuildCoreLuts(connectivity, mapping);
  const DerivedEvents derived = DeriveEvents(
      SynthTrace(spec, 400, 0.05, 1), connectivity, mapping, 10);
  const Topology topo(kTree);
  const EnergyModel energy = EnergyModel::Default(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Simulate(derived.events, scheme, topo, mapping, lut, energy));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(derived.events.size()));
  state.SetLabel(std::to_string(derived.events.size()) + " events");
}
BENCHMARK_CAPTURE(BM_Simulate, fbs, Scheme::kFbs)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Simulate, symbol, Scheme::kSymbol)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Simulate, hbs, Scheme::kHbs)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Simulate, unicast, Scheme::kUnicast)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace hbsnoc

BENCHMARK_MAIN();
