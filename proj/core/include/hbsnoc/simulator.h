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

#ifndef HBSNOC_SIMULATOR_H_
#define HBSNOC_SIMULATOR_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hbsnoc/address.h"
#include "hbsnoc/router.h"
#include "hbsnoc/topology.h"
#include "hbsnoc/traffic.h"

namespace hbsnoc {

// Link energy per header bit for each tree level, plus a fixed cost for
// every filter LUT lookup at a receiving core. Units are arbitrary.
struct EnergyModel {
  // Index 0 is level 1 (R1 to core); the last entry is the root level.
  std::vector<double> link_energy_per_bit;
  double filter_energy_per_lookup = 8.0;

  // 1.0 at the leaf level, x4 per level up; 8.0 per lookup.
  static EnergyModel Default(int levels);

  // Throws std::invalid_argument unless there is one nonnegative entry per
  // level, the root entry is at least the leaf entry, and the lookup energy
  // is nonnegative.
  void Validate(int levels) const;

  double LinkEnergy(int level) const {
    return link_energy_per_bit[static_cast<std::size_t>(level - 1)];
  }
};

enum class FilterVerdict { kLegal, kIllegal };

FilterVerdict FilterAtCore(CoreIndex core, NeuronId source_tag,
                           const CoreLut& lut);

struct SimReport {
  Scheme scheme = Scheme::kFbs;
  std::uint64_t events = 0;
  std::uint64_t packets_injected = 0;
  std::uint64_t link_traversals = 0;
  // Sum of header_bits over every traversed link.
  std::uint64_t link_bit_traversals = 0;
  std::uint64_t legal_deliveries = 0;
  std::uint64_t illegal_deliveries = 0;
  double routing_energy = 0.0;
  // Every arrival is looked up.
  double filtering_energy = 0.0;
  // The share of filtering_energy spent on illegal arrivals.
  double illegal_filtering_energy = 0.0;
  double total_energy = 0.0;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

struct SimOptions {
  int tag_bits = 10;
  Turnaround turnaround = Turnaround::kRoot;
};

// Receives every routed packet; used for instrumentation.
class PacketObserver {
 public:
  virtual ~PacketObserver() = default;
  virtual void OnPacket(const SpikeEvent& event, const Packet& packet,
                        CoreIndex source_core, const RouteResult& route) = 0;
};

// Encodes each event's targets under `scheme`, injects from the source
// neuron's core, routes, filters every arrival against `lut`, and accumulates
// energy. Events are processed in order without contention. Throws
// std::out_of_range for an unmapped neuron and std::invalid_argument for an
// encoding failure.
SimReport Simulate(std::span<const SpikeEvent> events, Scheme scheme,
                   const Topology& topo, const NeuronMapping& mapping,
                   const CoreLut& lut, const EnergyModel& energy,
                   const SimOptions& options = {},
                   PacketObserver* observer = nullptr);

// Flat object keyed by the SimReport field names, in field order.
nlohmann::ordered_json ToJson(const SimReport& report);

// Column names, comma-separated, in SimReport field order.
std::string SimReportCsvHeader();
std::string SimReportCsvRow(const SimReport& report);

// Shortest round-trip decimal form.
std::string FormatDouble(double value);

}  // namespace hbsnoc

#endif  // HBSNOC_SIMULATOR_H_
