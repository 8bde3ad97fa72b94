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

#include "hbsnoc/simulator.h"

#include <array>
#include <charconv>
#include <stdexcept>

namespace hbsnoc {

EnergyModel EnergyModel::Default(int levels) {
  EnergyModel model;
  double e = 1.0;
  for (int level = 1; level <= levels; ++level) {
    model.link_energy_per_bit.push_back(e);
    e *= 4.0;
  }
  model.filter_energy_per_lookup = 8.0;
  return model;
}

void EnergyModel::Validate(int levels) const {
  if (link_energy_per_bit.size() != static_cast<std::size_t>(levels)) {
    throw std::invalid_argument(
        "energy model has " + std::to_string(link_energy_per_bit.size()) +
        " link energies, expected one per level (" + std::to_string(levels) +
        ")");
  }
  for (double e : link_energy_per_bit) {
    if (!(e >= 0.0)) {
      throw std::invalid_argument("link energies must be nonnegative");
    }
  }
  if (link_energy_per_bit.back() < link_energy_per_bit.front()) {
    throw std::invalid_argument(
        "root-level link energy must be at least the leaf-level link energy");
  }
  if (!(filter_energy_per_lookup >= 0.0)) {
    throw std::invalid_argument("filter lookup energy must be nonnegative");
  }
}

FilterVerdict FilterAtCore(CoreIndex core, NeuronId source_tag,
                           const CoreLut& lut) {
  return lut.IsLegal(core, source_tag) ? FilterVerdict::kLegal
                                       : FilterVerdict::kIllegal;
}

SimReport Simulate(std::span<const SpikeEvent> events, Scheme scheme,
                   const Topology& topo, const NeuronMapping& mapping,
                   const CoreLut& lut, const EnergyModel& energy,
                   const SimOptions& options, PacketObserver* observer) {
  const TreeConfig& cfg = topo.config();
  energy.Validate(cfg.levels());
  if (lut.core_count() != cfg.core_count()) {
    throw std::invalid_argument("LUT core count does not match the topology");
  }
  SimReport report;
  report.scheme = scheme;
  for (const SpikeEvent& event : events) {
    const CoreIndex source_core = mapping.CoreOf(event.source);
    const Packet packet = MakePacket(Encode(scheme, event.targets, cfg),
                                     event.source, options.tag_bits, cfg);
    const RouteResult route =
        scheme == Scheme::kUnicast
            ? RouteUnicastBatch(std::get<UnicastAddress>(packet.routing_field),
                                source_core, topo)
            : RouteMulticast(packet, source_core, topo, options.turnaround);

    ++report.events;
    report.packets_injected += route.packets;
    const auto header = static_cast<std::uint64_t>(packet.header_bits);
    for (const LinkTraversal& t : route.traversals) {
      ++report.link_traversals;
      report.link_bit_traversals += header;
      report.routing_energy += static_cast<double>(header) *
                               energy.LinkEnergy(topo.LinkLevel(t.link));
    }
    for (CoreIndex core : route.deliveries) {
      report.filtering_energy += energy.filter_energy_per_lookup;
      if (FilterAtCore(core, event.source, lut) == FilterVerdict::kLegal) {
        ++report.legal_deliveries;
      } else {
        ++report.illegal_deliveries;
        report.illegal_filtering_energy += energy.filter_energy_per_lookup;
      }
    }
    if (observer != nullptr) {
      observer->OnPacket(event, packet, source_core, route);
    }
  }
  report.total_energy = report.routing_energy + report.filtering_energy;
  return report;
}

nlohmann::ordered_json ToJson(const SimReport& report) {
  return nlohmann::ordered_json{
      {"scheme", SchemeName(report.scheme)},
      {"events", report.events},
      {"packets_injected", report.packets_injected},
      {"link_traversals", report.link_traversals},
      {"link_bit_traversals", report.link_bit_traversals},
      {"legal_deliveries", report.legal_deliveries},
      {"illegal_deliveries", report.illegal_deliveries},
      {"routing_energy", report.routing_energy},
      {"filtering_energy", report.filtering_energy},
      {"illegal_filtering_energy", report.illegal_filtering_energy},
      {"total_energy", report.total_energy},
  };
}

std::string SimReportCsvHeader() {
  return "scheme,events,packets_injected,link_traversals,link_bit_traversals,"
         "legal_deliveries,illegal_deliveries,routing_energy,filtering_energy,"
         "illegal_filtering_energy,total_energy";
}

std::string FormatDouble(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

std::string SimReportCsvRow(const SimReport& r) {
  std::string row(SchemeName(r.scheme));
  for (std::uint64_t v :
       {r.events, r.packets_injected, r.link_traversals, r.link_bit_traversals,
        r.legal_deliveries, r.illegal_deliveries}) {
    row += ',' + std::to_string(v);
  }
  for (double v : {r.routing_energy, r.filtering_energy,
                   r.illegal_filtering_energy, r.total_energy}) {
    row += ',' + FormatDouble(v);
  }
  return row;
}

}  // namespace hbsnoc
