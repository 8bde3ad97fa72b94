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

// Spike workload generation: a layered recurrent network's fan-out graph,
// neuron-to-core placement, Bernoulli spike traces, and the target-core
// events and filter LUTs derived from them. Only connectivity matters here;
// there are no weights or neuron dynamics.

#ifndef HBSNOC_TRAFFIC_H_
#define HBSNOC_TRAFFIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hbsnoc/destination_set.h"
#include "hbsnoc/tree_config.h"

namespace hbsnoc {

using NeuronId = std::uint32_t;

enum class LayerKind { kRecurrent, kFeedforward };

struct Layer {
  std::uint32_t size;
  LayerKind kind;

  friend bool operator==(const Layer&, const Layer&) = default;
};

struct NetworkSpec {
  std::vector<Layer> layers;
  // Edge probability for every candidate pair: distinct neurons within a
  // recurrent layer, and every (layer i, layer i+1) pair.
  double connection_density = 0.1;
  // Edges into feedforward layers use density 1.0.
  bool literal_fc = false;
  // Reject a network in which a neuron with candidate targets draws none.
  bool require_fanout = false;

  // 3 recurrent then 3 feedforward layers of 100 neurons.
  static NetworkSpec Default();

  std::uint32_t neuron_count() const;
  NeuronId LayerOffset(std::size_t layer) const;
  // Throws std::invalid_argument on an empty network, a zero-size layer, or
  // a density outside (0, 1].
  void Validate() const;
};

// Ascending target neuron ids per source neuron.
using Connectivity = std::vector<std::vector<NeuronId>>;

// Deterministic for a given (spec, seed).
Connectivity GenerateConnectivity(const NetworkSpec& spec, std::uint64_t seed);

enum class MappingStrategy { kSequential, kRandomSwitch };

struct MappingOptions {
  MappingStrategy strategy = MappingStrategy::kRandomSwitch;
  std::uint32_t core_capacity = 40;
  // Per-neuron probability of jumping to a random non-full core.
  double switch_probability = 0.05;
  std::uint64_t seed = 0;
};

struct NeuronMapping {
  std::vector<CoreIndex> assignment;  // neuron id -> core
  std::uint32_t core_capacity = 0;
  CoreIndex core_count = 0;

  // Throws std::out_of_range for an unmapped neuron.
  CoreIndex CoreOf(NeuronId neuron) const;
  std::vector<std::uint32_t> Occupancy() const;
  // Throws std::invalid_argument if a core index is out of range or a core
  // holds more than core_capacity neurons.
  void Validate() const;

  friend bool operator==(const NeuronMapping&, const NeuronMapping&) = default;
};

// Walks neurons in layer order, filling the current core until it is full
// and then moving to the next non-full core in index order. kRandomSwitch
// additionally jumps to a uniformly chosen other non-full core with
// `switch_probability` before placing each neuron. Throws
// std::invalid_argument when neuron_count > N * core_capacity.
NeuronMapping MapNeurons(const NetworkSpec& spec, const TreeConfig& cfg,
                         const MappingOptions& options);

struct Spike {
  std::uint32_t timestep;
  NeuronId neuron;

  friend bool operator==(const Spike&, const Spike&) = default;
};

struct SpikeTrace {
  std::uint32_t steps = 0;
  // Ordered by (timestep, neuron).
  std::vector<Spike> events;

  friend bool operator==(const SpikeTrace&, const SpikeTrace&) = default;
};

// Independent Bernoulli(rate) firing per neuron per step. Throws
// std::invalid_argument for rate outside [0, 1].
SpikeTrace SynthTrace(const NetworkSpec& spec, std::uint32_t steps, double rate,
                      std::uint64_t seed);

// A spike converted to its multicast request.
struct SpikeEvent {
  std::uint32_t timestep;
  NeuronId source;  // also the packet's source tag
  DestinationSet targets;
};

struct DerivedEvents {
  std::vector<SpikeEvent> events;
  // Spikes from neurons with no synapses; these never enter the NoC.
  std::size_t dropped_spikes = 0;
};

// Source tag width for `neuron_count` neurons: ceil(log2), at least 10.
int SourceTagBits(std::uint32_t neuron_count);

// Target core set = { core(t) : t in connectivity[source] }. Throws
// std::invalid_argument if a source id does not fit in `tag_bits` or is not
// in the connectivity map.
DerivedEvents DeriveEvents(const SpikeTrace& trace,
                           const Connectivity& connectivity,
                           const NeuronMapping& mapping, int tag_bits);

// Per-core set of source tags that have at least one synapse on the core.
class CoreLut {
 public:
  explicit CoreLut(CoreIndex core_count) : legal_(core_count) {}

  // Sorted, duplicate-free.
  void SetLegalSources(CoreIndex core, std::vector<NeuronId> sources);
  const std::vector<NeuronId>& LegalSources(CoreIndex core) const {
    return legal_.at(core);
  }
  bool IsLegal(CoreIndex core, NeuronId source) const;
  CoreIndex core_count() const { return static_cast<CoreIndex>(legal_.size()); }

 private:
  std::vector<std::vector<NeuronId>> legal_;
};

CoreLut BuildCoreLuts(const Connectivity& connectivity,
                      const NeuronMapping& mapping);

}  // namespace hbsnoc

#endif  // HBSNOC_TRAFFIC_H_
