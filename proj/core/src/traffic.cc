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

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace hbsnoc {

NetworkSpec NetworkSpec::Default() {
  NetworkSpec spec;
  for (int i = 0; i < 3; ++i) spec.layers.push_back({100, LayerKind::kRecurrent});
  for (int i = 0; i < 3; ++i) spec.layers.push_back({100, LayerKind::kFeedforward});
  return spec;
}

std::uint32_t NetworkSpec::neuron_count() const {
  std::uint32_t total = 0;
  for (const Layer& layer : layers) total += layer.size;
  return total;
}

NeuronId NetworkSpec::LayerOffset(std::size_t layer) const {
  NeuronId offset = 0;
  for (std::size_t i = 0; i < layer; ++i) offset += layers.at(i).size;
  return offset;
}

void NetworkSpec::Validate() const {
  if (layers.empty()) {
    throw std::invalid_argument("network must have at least one layer");
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].size == 0) {
      throw std::invalid_argument("layer " + std::to_string(i) +
                                  " has zero neurons");
    }
  }
  if (!(connection_density > 0.0 && connection_density <= 1.0)) {
    throw std::invalid_argument("connection density must be in (0, 1], got " +
                                std::to_string(connection_density));
  }
}

Connectivity GenerateConnectivity(const NetworkSpec& spec, std::uint64_t seed) {
  spec.Validate();
  std::mt19937_64 rng(seed);
  Connectivity out(spec.neuron_count());
  for (std::size_t li = 0; li < spec.layers.size(); ++li) {
    const Layer& layer = spec.layers[li];
    const NeuronId offset = spec.LayerOffset(li);
    const bool has_next = li + 1 < spec.layers.size();
    const NeuronId next_offset = offset + layer.size;
    const std::uint32_t next_size = has_next ? spec.layers[li + 1].size : 0;
    const double next_density =
        has_next && spec.literal_fc &&
                spec.layers[li + 1].kind == LayerKind::kFeedforward
            ? 1.0
            : spec.connection_density;
    std::bernoulli_distribution intra(spec.connection_density);
    std::bernoulli_distribution inter(next_density);

    for (NeuronId a = offset; a < offset + layer.size; ++a) {
      std::vector<NeuronId>& targets = out[a];
      std::uint32_t candidates = 0;
      if (layer.kind == LayerKind::kRecurrent) {
        for (NeuronId b = offset; b < offset + layer.size; ++b) {
          if (b == a) continue;
          ++candidates;
          if (intra(rng)) targets.push_back(b);
        }
      }
      for (NeuronId b = next_offset; b < next_offset + next_size; ++b) {
        ++candidates;
        if (inter(rng)) targets.push_back(b);
      }
      if (spec.require_fanout && candidates > 0 && targets.empty()) {
        throw std::invalid_argument("neuron " + std::to_string(a) +
                                    " has an empty fan-out");
      }
    }
  }
  return out;
}

CoreIndex NeuronMapping::CoreOf(NeuronId neuron) const {
  if (neuron >= assignment.size()) {
    throw std::out_of_range("neuron " + std::to_string(neuron) +
                            " is not mapped to a core");
  }
  return assignment[neuron];
}

std::vector<std::uint32_t> NeuronMapping::Occupancy() const {
  std::vector<std::uint32_t> occupancy(core_count, 0);
  for (CoreIndex c : assignment) occupancy.at(c)++;
  return occupancy;
}

void NeuronMapping::Validate() const {
  for (std::size_t n = 0; n < assignment.size(); ++n) {
    if (assignment[n] >= core_count) {
      throw std::invalid_argument("neuron " + std::to_string(n) +
                                  " mapped to nonexistent core " +
                                  std::to_string(assignment[n]));
    }
  }
  const auto occupancy = Occupancy();
  for (CoreIndex c = 0; c < core_count; ++c) {
    if (occupancy[c] > core_capacity) {
      throw std::invalid_argument("core " + std::to_string(c) + " holds " +
                                  std::to_string(occupancy[c]) +
                                  " neurons, capacity " +
                                  std::to_string(core_capacity));
    }
  }
}

NeuronMapping MapNeurons(const NetworkSpec& spec, const TreeConfig& cfg,
                         const MappingOptions& options) {
  spec.Validate();
  const std::uint32_t total = spec.neuron_count();
  const CoreIndex cores = cfg.core_count();
  if (options.core_capacity == 0 ||
      std::uint64_t{total} >
          std::uint64_t{cores} * std::uint64_t{options.core_capacity}) {
    throw std::invalid_argument(
        std::to_string(total) + " neurons do not fit in " +
        std::to_string(cores) + " cores of capacity " +
        std::to_string(options.core_capacity));
  }
  if (!(options.switch_probability >= 0.0 && options.switch_probability <= 1.0)) {
    throw std::invalid_argument("switch probability must be in [0, 1]");
  }

  NeuronMapping mapping;
  mapping.core_capacity = options.core_capacity;
  mapping.core_count = cores;
  mapping.assignment.reserve(total);
  std::vector<std::uint32_t> occupancy(cores, 0);
  std::mt19937_64 rng(options.seed);
  std::bernoulli_distribution jump(options.switch_probability);
  CoreIndex current = 0;
  std::vector<CoreIndex> choices;

  for (NeuronId n = 0; n < total; ++n) {
    if (options.strategy == MappingStrategy::kRandomSwitch && jump(rng)) {
      choices.clear();
      for (CoreIndex c = 0; c < cores; ++c) {
        if (c != current && occupancy[c] < options.core_capacity) {
          choices.push_back(c);
        }
      }
      if (!choices.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
        current = choices[pick(rng)];
      }
    }
    while (occupancy[current] >= options.core_capacity) {
      current = (current + 1) % cores;
    }
    mapping.assignment.push_back(current);
    ++occupancy[current];
  }
  return mapping;
}

SpikeTrace SynthTrace(const NetworkSpec& spec, std::uint32_t steps, double rate,
                      std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("firing rate must be in [0, 1], got " +
                                std::to_string(rate));
  }
  const std::uint32_t neurons = spec.neuron_count();
  SpikeTrace trace;
  trace.steps = steps;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution fire(rate);
  for (std::uint32_t t = 0; t < steps; ++t) {
    for (NeuronId n = 0; n < neurons; ++n) {
      if (fire(rng)) trace.events.push_back({t, n});
    }
  }
  return trace;
}

int SourceTagBits(std::uint32_t neuron_count) {
  return std::max(10, CeilLog2(std::max<std::uint32_t>(neuron_count, 1)));
}

DerivedEvents DeriveEvents(const SpikeTrace& trace,
                           const Connectivity& connectivity,
                           const NeuronMapping& mapping, int tag_bits) {
  DerivedEvents out;
  std::vector<CoreIndex> cores;
  for (const Spike& spike : trace.events) {
    if (spike.neuron >= connectivity.size()) {
      throw std::invalid_argument("spike from unknown neuron " +
                                  std::to_string(spike.neuron));
    }
    if (tag_bits < 32 && (spike.neuron >> tag_bits) != 0) {
      throw std::invalid_argument("neuron id " + std::to_string(spike.neuron) +
                                  " does not fit in a " +
                                  std::to_string(tag_bits) + "-bit source tag");
    }
    const auto& targets = connectivity[spike.neuron];
    if (targets.empty()) {
      ++out.dropped_spikes;
      continue;
    }
    cores.clear();
    for (NeuronId t : targets) cores.push_back(mapping.CoreOf(t));
    std::sort(cores.begin(), cores.end());
    cores.erase(std::unique(cores.begin(), cores.end()), cores.end());
    out.events.push_back(SpikeEvent{
        spike.timestep, spike.neuron,
        DestinationSet::FromMembers(cores, mapping.core_count)});
  }
  return out;
}

void CoreLut::SetLegalSources(CoreIndex core, std::vector<NeuronId> sources) {
  legal_.at(core) = std::move(sources);
}

bool CoreLut::IsLegal(CoreIndex core, NeuronId source) const {
  const auto& sources = legal_.at(core);
  return std::binary_search(sources.begin(), sources.end(), source);
}

CoreLut BuildCoreLuts(const Connectivity& connectivity,
                      const NeuronMapping& mapping) {
  std::vector<std::vector<NeuronId>> legal(mapping.core_count);
  for (NeuronId s = 0; s < connectivity.size(); ++s) {
    for (NeuronId t : connectivity[s]) {
      auto& sources = legal[mapping.CoreOf(t)];
      if (sources.empty() || sources.back() != s) sources.push_back(s);
    }
  }
  CoreLut lut(mapping.core_count);
  for (CoreIndex c = 0; c < mapping.core_count; ++c) {
    lut.SetLegalSources(c, std::move(legal[c]));
  }
  return lut;
}

}  // namespace hbsnoc
