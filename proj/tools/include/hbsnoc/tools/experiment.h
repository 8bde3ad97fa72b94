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

#ifndef HBSNOC_TOOLS_EXPERIMENT_H_
#define HBSNOC_TOOLS_EXPERIMENT_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "hbsnoc/simulator.h"
#include "hbsnoc/tools/experiment_config.h"
#include "hbsnoc/topology.h"
#include "hbsnoc/traffic.h"

namespace hbsnoc::tools {

// Everything shared by the runs of one experiment. Immutable once built.
struct PreparedExperiment {
  ExperimentConfig config;
  Topology topology;
  Connectivity connectivity;
  SpikeTrace trace;
  int tag_bits;
  EnergyModel energy;
};

// Validates the config, generates (or loads) the network and trace.
PreparedExperiment Prepare(const ExperimentConfig& config);

// Mapping for repetition `rep`: seed config.mapping.seed + rep, or the
// mapping file.
NeuronMapping MappingFor(const PreparedExperiment& prepared, int rep);

struct RunRecord {
  int mapping = 0;
  std::size_t dropped_spikes = 0;
  SimReport report;
};

struct ExperimentResult {
  // Ordered by scheme (config order), then mapping index.
  std::vector<RunRecord> runs;
};

// Creates the observer for one (scheme, mapping) run, or returns null.
// Called from worker threads; every returned observer is used by one run.
using ObserverFactory =
    std::function<std::unique_ptr<PacketObserver>(Scheme, int mapping)>;

// Runs every (scheme, mapping) pair on the shared trace. `jobs` worker
// threads split the mappings; output order does not depend on it.
ExperimentResult RunExperiment(const PreparedExperiment& prepared,
                               unsigned jobs = 1,
                               const ObserverFactory& observers = {});

// Per scheme: run count, sum and mean/min/max of the energy and illegal
// delivery fields, plus the aggregate HBS:Symbol illegal ratio and energy
// ratios when both schemes ran.
nlohmann::ordered_json Summarize(const PreparedExperiment& prepared,
                                 const ExperimentResult& result);

// Writes runs.csv, runs.json and summary.json into `dir`, creating it.
// Throws std::runtime_error on an I/O failure.
void WriteReports(const std::filesystem::path& dir,
                  const PreparedExperiment& prepared,
                  const ExperimentResult& result);

}  // namespace hbsnoc::tools

#endif  // HBSNOC_TOOLS_EXPERIMENT_H_
