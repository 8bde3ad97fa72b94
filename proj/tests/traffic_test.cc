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


#include "hbsnoc/traffic.h"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "hbsnoc/address.h"

namespace hbsnoc {
namespace {

const TreeConfig kTree16(4, 2);

// |x - n p| <= 5 sqrt(n p (1 - p)).
void ExpectBinomial(double x, double n, double p) {
  const double mean = n * p;
  const double sigma = std::sqrt(n * p * (1 - p));
  EXPECT_LE(std::abs(x - mean), 5 * sigma)
      << "x=" << x << " n=" << n << " p=" << p;
}

TEST(NetworkSpecTest, DefaultShape) {
  const NetworkSpec spec = NetworkSpec::Default();
  ASSERT_EQ(spec.layers.size(), 6u);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(spec.layers[static_cast<std::size_t>(i)].size, 100u);
    EXPECT_EQ(spec.layers[static_cast<std::size_t>(i)].kind,
              i < 3 ? LayerKind::kRecurrent : LayerKind::kFeedforward);
  }
  EXPECT_EQ(spec.neuron_count(), 600u);
  EXPECT_EQ(spec.LayerOffset(4), 400u);
  EXPECT_DOUBLE_EQ(spec.connection_density, 0.1);
}

TEST(NetworkSpecTest, Validation) {
  NetworkSpec spec{{{3, LayerKind::kFeedforward}, {0, LayerKind::kFeedforward}}};
  EXPECT_THROW(GenerateConnectivity(spec, 1), std::invalid_argument);
  spec.layers[1].size = 3;
  spec.connection_density = 0.0;
  EXPECT_THROW(GenerateConnectivity(spec, 1), std::invalid_argument);
  spec.connection_density = 1.5;
  EXPECT_THROW(GenerateConnectivity(spec, 1), std::invalid_argument);
  EXPECT_THROW(GenerateConnectivity(NetworkSpec{}, 1), std::invalid_argument);
}

TEST(ConnectivityTest, CompleteBipartiteAtFullDensity) {
  NetworkSpec spec{{{3, LayerKind::kFeedforward}, {3, LayerKind::kFeedforward}}};
  spec.connection_density = 1.0;
  const Connectivity c = GenerateConnectivity(spec, 1);
  for (NeuronId n = 0; n < 3; ++n) {
    EXPECT_EQ(c[n], (std::vector<NeuronId>{3, 4, 5}));
  }
  for (NeuronId n = 3; n < 6; ++n) EXPECT_TRUE(c[n].empty());
}

TEST(ConnectivityTest, RecurrentLayersExcludeSelfEdges) {
  NetworkSpec spec{{{4, LayerKind::kRecurrent}}};
  spec.connection_density = 1.0;
  const Connectivity c = GenerateConnectivity(spec, 1);
  EXPECT_EQ(c[2], (std::vector<NeuronId>{0, 1, 3}));
}

TEST(ConnectivityTest, DefaultFanOutWithinBinomialBounds) {
  const NetworkSpec spec = NetworkSpec::Default();
  const Connectivity c = GenerateConnectivity(spec, 7);
  double recurrent_total = 0, feedforward_total = 0;
  for (NeuronId n = 0; n < 600; ++n) {
    const double fan = static_cast<double>(c[n].size());
    if (n < 300) {
      ExpectBinomial(fan, 199, 0.1);  // 99 in-layer + 100 next-layer
      recurrent_total += fan;
    } else if (n < 500) {
      ExpectBinomial(fan, 100, 0.1);
      feedforward_total += fan;
    } else {
      EXPECT_EQ(fan, 0);  // output layer
    }
  }
  ExpectBinomial(recurrent_total, 300 * 199, 0.1);
  ExpectBinomial(feedforward_total, 200 * 100, 0.1);
}

TEST(ConnectivityTest, LiteralFullyConnectedLayers) {
  NetworkSpec spec = NetworkSpec::Default();
  spec.literal_fc = true;
  const Connectivity c = GenerateConnectivity(spec, 7);
  // Layer 2 (recurrent) feeds layer 3 (feedforward) completely.
  for (NeuronId n = 200; n < 300; ++n) EXPECT_GE(c[n].size(), 100u);
  for (NeuronId n = 300; n < 500; ++n) EXPECT_EQ(c[n].size(), 100u);
  // Layer 1 feeds layer 2, which is recurrent: density still applies.
  EXPECT_LT(c[100].size(), 150u);
}

TEST(ConnectivityTest, EmptyFanOutRejectedWhenRequired) {
  NetworkSpec spec{{{50, LayerKind::kFeedforward}, {2, LayerKind::kFeedforward}}};
  spec.connection_density = 0.01;
  spec.require_fanout = true;
  EXPECT_THROW(GenerateConnectivity(spec, 3), std::invalid_argument);
  spec.require_fanout = false;
  EXPECT_NO_THROW(GenerateConnectivity(spec, 3));
}

TEST(ConnectivityTest, DeterministicUnderSeed) {
  const NetworkSpec spec = NetworkSpec::Default();
  EXPECT_EQ(GenerateConnectivity(spec, 11), GenerateConnectivity(spec, 11));
  EXPECT_NE(GenerateConnectivity(spec, 11), GenerateConnectivity(spec, 12));
}

TEST(MapNeuronsTest, SequentialFillsFifteenCores) {
  MappingOptions opts;
  opts.strategy = MappingStrategy::kSequential;
  const NeuronMapping m = MapNeurons(NetworkSpec::Default(), kTree16, opts);
  const auto occ = m.Occupancy();
  for (CoreIndex c = 0; c < 15; ++c) EXPECT_EQ(occ[c], 40u);
  EXPECT_EQ(occ[15], 0u);
  for (NeuronId n = 0; n < 600; ++n) EXPECT_EQ(m.CoreOf(n), n / 40);
  EXPECT_THROW(m.CoreOf(600), std::out_of_range);
}

TEST(MapNeuronsTest, UnitCapacityIsBijection) {
  MappingOptions opts;
  opts.core_capacity = 1;
  opts.seed = 3;
  const NetworkSpec spec{{{16, LayerKind::kFeedforward}}};
  const NeuronMapping m = MapNeurons(spec, kTree16, opts);
  std::vector<CoreIndex> sorted = m.assignment;
  std::sort(sorted.begin(), sorted.end());
  for (CoreIndex c = 0; c < 16; ++c) EXPECT_EQ(sorted[c], c);
}

TEST(MapNeuronsTest, InsufficientCapacity) {
  const NetworkSpec spec{{{601, LayerKind::kFeedforward}}};
  EXPECT_THROW(MapNeurons(spec, TreeConfig(15, 1), {}), std::invalid_argument);
  MappingOptions zero;
  zero.core_capacity = 0;
  EXPECT_THROW(MapNeurons(NetworkSpec::Default(), kTree16, zero),
               std::invalid_argument);
  MappingOptions bad_p;
  bad_p.switch_probability = 1.5;
  EXPECT_THROW(MapNeurons(NetworkSpec::Default(), kTree16, bad_p),
               std::invalid_argument);
}

TEST(MapNeuronsTest, RandomSwitchRespectsCapacityAndSeed) {
  const NetworkSpec spec = NetworkSpec::Default();
  MappingOptions seq;
  seq.strategy = MappingStrategy::kSequential;
  const NeuronMapping sequential = MapNeurons(spec, kTree16, seq);
  int differs = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    MappingOptions opts;
    opts.seed = seed;
    const NeuronMapping m = MapNeurons(spec, kTree16, opts);
    EXPECT_NO_THROW(m.Validate());
    EXPECT_EQ(m.assignment.size(), 600u);
    for (std::uint32_t occ : m.Occupancy()) EXPECT_LE(occ, 40u);
    EXPECT_EQ(m, MapNeurons(spec, kTree16, opts));
    differs += m != sequential;
  }
  EXPECT_GT(differs, 45);
}

TEST(MapNeuronsTest, ValidateCatchesOverfullCore) {
  NeuronMapping m{{0, 0, 0}, 2, 4};
  EXPECT_THROW(m.Validate(), std::invalid_argument);
  NeuronMapping out_of_range{{5}, 2, 4};
  EXPECT_THROW(out_of_range.Validate(), std::invalid_argument);
}

TEST(SynthTraceTest, Examples) {
  const NetworkSpec two{{{2, LayerKind::kFeedforward}}};
  EXPECT_TRUE(SynthTrace(NetworkSpec::Default(), 400, 0.0, 1).events.empty());
  const SpikeTrace all = SynthTrace(two, 3, 1.0, 1);
  EXPECT_EQ(all.events.size(), 6u);
  EXPECT_EQ(all.steps, 3u);
  const SpikeTrace t = SynthTrace(NetworkSpec::Default(), 400, 0.05, 9);
  ExpectBinomial(static_cast<double>(t.events.size()), 600 * 400, 0.05);
  for (std::size_t i = 1; i < t.events.size(); ++i) {
    ASSERT_LE(t.events[i - 1].timestep, t.events[i].timestep);
    ASSERT_LT(t.events[i].timestep, 400u);
    ASSERT_LT(t.events[i].neuron, 600u);
  }
  EXPECT_EQ(t, SynthTrace(NetworkSpec::Default(), 400, 0.05, 9));
  EXPECT_THROW(SynthTrace(two, 3, -0.1, 1), std::invalid_argument);
}

TEST(SourceTagBitsTest, MinimumTen) {
  EXPECT_EQ(SourceTagBits(600), 10);
  EXPECT_EQ(SourceTagBits(1024), 10);
  EXPECT_EQ(SourceTagBits(1025), 11);
  EXPECT_EQ(SourceTagBits(1), 10);
}

TEST(DeriveEventsTest, SetSemantics) {
  // Neuron 0 targets 1..4; mapping puts 1,2 on core 4 and 3 on core 1, 4 on 9.
  const Connectivity conn{{1, 2, 3, 4}, {2}, {}, {}, {}};
  const NeuronMapping mapping{{0, 4, 4, 1, 9}, 40, 16};
  const SpikeTrace trace{2, {{0, 0}, {0, 2}, {1, 1}}};
  const DerivedEvents d = DeriveEvents(trace, conn, mapping, 10);
  ASSERT_EQ(d.events.size(), 2u);
  EXPECT_EQ(d.dropped_spikes, 1u);
  EXPECT_EQ(d.events[0].targets.members(), (std::vector<CoreIndex>{1, 4, 9}));
  EXPECT_EQ(d.events[1].targets.members(), (std::vector<CoreIndex>{4}));
  EXPECT_EQ(d.events[1].timestep, 1u);
  EXPECT_EQ(d.events[1].source, 1u);
}

TEST(DeriveEventsTest, Errors) {
  const Connectivity conn(3);
  const NeuronMapping mapping{{0, 0, 0}, 40, 16};
  EXPECT_THROW(DeriveEvents(SpikeTrace{1, {{0, 3}}}, conn, mapping, 10),
               std::invalid_argument);
  const Connectivity big(700, std::vector<NeuronId>{0});
  NeuronMapping wide;
  wide.assignment.assign(700, 0);
  wide.core_capacity = 700;
  wide.core_count = 16;
  EXPECT_THROW(DeriveEvents(SpikeTrace{1, {{0, 600}}}, big, wide, 9),
               std::invalid_argument);
  EXPECT_NO_THROW(DeriveEvents(SpikeTrace{1, {{0, 600}}}, big, wide, 10));
}

TEST(CoreLutTest, EmptyAndCompleteConnectivity) {
  const NeuronMapping mapping{{0, 1, 2, 3}, 40, 4};
  const CoreLut empty = BuildCoreLuts(Connectivity(4), mapping);
  for (CoreIndex c = 0; c < 4; ++c) {
    EXPECT_TRUE(empty.LegalSources(c).empty());
    EXPECT_FALSE(empty.IsLegal(c, 0));
  }
  Connectivity complete(4);
  for (NeuronId s = 0; s < 4; ++s) {
    for (NeuronId t = 0; t < 4; ++t) complete[s].push_back(t);
  }
  const CoreLut full = BuildCoreLuts(complete, mapping);
  for (CoreIndex c = 0; c < 4; ++c) {
    for (NeuronId s = 0; s < 4; ++s) EXPECT_TRUE(full.IsLegal(c, s));
  }
}

// Every target core accepts the event; every overcovered core rejects it.
TEST(PipelineTest, DerivedEventsAgreeWithLuts) {
  const NetworkSpec spec = NetworkSpec::Default();
  const Connectivity conn = GenerateConnectivity(spec, 42);
  MappingOptions opts;
  opts.seed = 42;
  const NeuronMapping mapping = MapNeurons(spec, kTree16, opts);
  const CoreLut lut = BuildCoreLuts(conn, mapping);
  const SpikeTrace trace = SynthTrace(spec, 100, 0.05, 42);
  const DerivedEvents d = DeriveEvents(trace, conn, mapping, SourceTagBits(600));
  ASSERT_FALSE(d.events.empty());
  EXPECT_GT(d.dropped_spikes, 0u);  // the output layer has no fan-out
  for (const SpikeEvent& e : d.events) {
    ASSERT_LT(e.targets.max(), 16u);
    for (CoreIndex c : e.targets) ASSERT_TRUE(lut.IsLegal(c, e.source));
    for (Scheme s : {Scheme::kSymbol, Scheme::kHbs}) {
      for (CoreIndex c : CoveredSet(Encode(s, e.targets, kTree16), kTree16)) {
        ASSERT_EQ(lut.IsLegal(c, e.source), e.targets.contains(c));
      }
    }
  }
}

}  // namespace
}  // namespace hbsnoc
