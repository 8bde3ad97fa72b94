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

#include "hbsnoc/tools/experiment.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "hbsnoc/trace_io.h"

namespace hbsnoc::tools {
namespace {

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return in;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

struct Stat {
  double sum = 0.0;
  double min = 0.0;
  double max = 0.0;

  void Add(double v, bool first) {
    sum += v;
    min = first ? v : std::min(min, v);
    max = first ? v : std::max(max, v);
  }

  nlohmann::ordered_json ToJson(std::size_t n) const {
    return {{"mean", sum / static_cast<double>(n)},
            {"min", min},
            {"max", max},
            {"sum", sum}};
  }
};

}  // namespace

PreparedExperiment Prepare(const ExperimentConfig& config) {
  config.Validate();
  const TreeConfig cfg = config.tree();
  Connectivity connectivity =
      GenerateConnectivity(config.network, config.network_seed);

  SpikeTrace trace;
  if (config.trace_source == TraceSource::kFile) {
    std::ifstream in = OpenInput(config.trace_file);
    trace = ReadTrace(in);
  } else {
    trace = SynthTrace(config.network, config.trace_steps, config.trace_rate,
                       config.trace_seed);
  }
  const int tag_bits = config.tag_bits > 0
                           ? config.tag_bits
                           : SourceTagBits(config.network.neuron_count());
  return PreparedExperiment{config,   Topology(cfg),
                            std::move(connectivity), std::move(trace),
                            tag_bits, config.energy()};
}

NeuronMapping MappingFor(const PreparedExperiment& prepared, int rep) {
  const ExperimentConfig& c = prepared.config;
  const TreeConfig& cfg = prepared.topology.config();
  if (c.mapping_source == MappingSource::kFile) {
    std::ifstream in = OpenInput(c.mapping_file);
    NeuronMapping mapping =
        ReadMapping(in, cfg.core_count(), c.mapping.core_capacity);
    if (mapping.assignment.size() != c.network.neuron_count()) {
      throw std::runtime_error(
          "mapping file " + c.mapping_file.string() + " maps " +
          std::to_string(mapping.assignment.size()) + " neurons, network has " +
          std::to_string(c.network.neuron_count()));
    }
    return mapping;
  }
  MappingOptions options = c.mapping;
  options.seed = c.mapping.seed + static_cast<std::uint64_t>(rep);
  return MapNeurons(c.network, cfg, options);
}

ExperimentResult RunExperiment(const PreparedExperiment& prepared,
                               unsigned jobs, const ObserverFactory& observers) {
  const ExperimentConfig& c = prepared.config;
  const std::size_t schemes = c.schemes.size();
  const auto reps = static_cast<std::size_t>(c.repetitions);
  std::vector<RunRecord> grid(schemes * reps);

  SimOptions options;
  options.tag_bits = prepared.tag_bits;
  options.turnaround = c.turnaround;

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t rep = next++; rep < reps; rep = next++) {
      try {
        const int rep_i = static_cast<int>(rep);
        const NeuronMapping mapping = MappingFor(prepared, rep_i);
        const CoreLut lut = BuildCoreLuts(prepared.connectivity, mapping);
        const DerivedEvents derived = DeriveEvents(
            prepared.trace, prepared.connectivity, mapping, prepared.tag_bits);
        for (std::size_t s = 0; s < schemes; ++s) {
          std::unique_ptr<PacketObserver> observer;
          if (observers) observer = observers(c.schemes[s], rep_i);
          RunRecord& record = grid[s * reps + rep];
          record.mapping = rep_i;
          record.dropped_spikes = derived.dropped_spikes;
          record.report =
              Simulate(derived.events, c.schemes[s], prepared.topology, mapping,
                       lut, prepared.energy, options, observer.get());
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = reps;
      }
    }
  };

  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(reps));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned i = 0; i < jobs; ++i) threads.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return ExperimentResult{std::move(grid)};
}

nlohmann::ordered_json Summarize(const PreparedExperiment& prepared,
                                 const ExperimentResult& result) {
  const ExperimentConfig& c = prepared.config;
  nlohmann::ordered_json summary;
  summary["cores"] = prepared.topology.config().core_count();
  summary["fan_out"] = c.fan_out;
  summary["levels"] = c.levels;
  summary["neurons"] = c.network.neuron_count();
  summary["spikes"] = prepared.trace.events.size();
  summary["tag_bits"] = prepared.tag_bits;
  summary["mappings"] = c.repetitions;

  nlohmann::ordered_json per_scheme = nlohmann::ordered_json::object();
  std::map<Scheme, std::pair<double, double>> totals;  // illegal, energy
  for (Scheme scheme : c.schemes) {
    Stat total, routing, filtering, illegal_filtering, illegal;
    std::size_t n = 0;
    std::uint64_t events = 0;
    for (const RunRecord& run : result.runs) {
      if (run.report.scheme != scheme) continue;
      const SimReport& r = run.report;
      const bool first = n == 0;
      total.Add(r.total_energy, first);
      routing.Add(r.routing_energy, first);
      filtering.Add(r.filtering_energy, first);
      illegal_filtering.Add(r.illegal_filtering_energy, first);
      illegal.Add(static_cast<double>(r.illegal_deliveries), first);
      events += r.events;
      ++n;
    }
    if (n == 0) continue;
    totals[scheme] = {illegal.sum, total.sum};
    per_scheme[std::string(SchemeName(scheme))] = {
        {"runs", n},
        {"events", events},
        {"total_energy", total.ToJson(n)},
        {"routing_energy", routing.ToJson(n)},
        {"filtering_energy", filtering.ToJson(n)},
        {"illegal_filtering_energy", illegal_filtering.ToJson(n)},
        {"illegal_deliveries", illegal.ToJson(n)},
    };
  }
  summary["schemes"] = per_scheme;

  auto ratio = [&](Scheme num, Scheme den, bool energy) -> nlohmann::ordered_json {
    auto a = totals.find(num);
    auto b = totals.find(den);
    if (a == totals.end() || b == totals.end()) return nullptr;
    const double x = energy ? a->second.second : a->second.first;
    const double y = energy ? b->second.second : b->second.first;
    if (y == 0.0) return nullptr;
    return x / y;
  };
  summary["illegal_ratio_hbs_to_symbol"] =
      ratio(Scheme::kHbs, Scheme::kSymbol, false);
  summary["energy_ratio_hbs_to_symbol"] =
      ratio(Scheme::kHbs, Scheme::kSymbol, true);
  summary["energy_ratio_hbs_to_fbs"] = ratio(Scheme::kHbs, Scheme::kFbs, true);
  return summary;
}

void WriteReports(const std::filesystem::path& dir,
                  const PreparedExperiment& prepared,
                  const ExperimentResult& result) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create " + dir.string() + ": " +
                             ec.message());
  }
  std::string csv = "mapping," + SimReportCsvHeader() + "\n";
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const RunRecord& run : result.runs) {
    csv += std::to_string(run.mapping) + "," + SimReportCsvRow(run.report) +
           "\n";
    nlohmann::ordered_json row = {{"mapping", run.mapping}};
    const nlohmann::ordered_json fields = ToJson(run.report);
    for (const auto& [key, value] : fields.items()) {
      row[key] = value;
    }
    runs.push_back(std::move(row));
  }
  WriteFile(dir / "runs.csv", csv);
  WriteFile(dir / "runs.json", runs.dump(2) + "\n");
  WriteFile(dir / "summary.json",
            Summarize(prepared, result).dump(2) + "\n");
}

}  // namespace hbsnoc::tools
