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

// Experiment configuration for `hbsnoc simulate`, read from an INI file:
//
//   schemes = fbs,symbol,hbs,unicast
//   tag_bits = 10            ; optional, default max(10, ceil(log2 neurons))
//   turnaround = root        ; root | lca
//
//   [tree]     fan_out, levels
//   [energy]   link (one value per level, leaf first), filter_lookup
//   [network]  layers (e.g. recurrent:100,feedforward:100), density,
//              literal_fc, require_fanout, seed
//   [mapping]  strategy (random_switch | sequential | file), file, capacity,
//              switch_probability, repetitions, seed
//   [trace]    source (synth | file), file, steps, rate, seed
//   [output]   dir

#ifndef HBSNOC_TOOLS_EXPERIMENT_CONFIG_H_
#define HBSNOC_TOOLS_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hbsnoc/address.h"
#include "hbsnoc/router.h"
#include "hbsnoc/simulator.h"
#include "hbsnoc/traffic.h"

namespace hbsnoc::tools {

// Thrown for an invalid configuration. what() lists one problem per line,
// each prefixed with its field path, e.g. "tree.fan_out: must be in [2, 64]".
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

enum class MappingSource { kGenerated, kFile };
enum class TraceSource { kSynth, kFile };

struct ExperimentConfig {
  int fan_out = 4;
  int levels = 2;
  std::vector<Scheme> schemes = {Scheme::kFbs, Scheme::kSymbol, Scheme::kHbs,
                                 Scheme::kUnicast};
  // 0 selects SourceTagBits(neuron count).
  int tag_bits = 0;
  Turnaround turnaround = Turnaround::kRoot;
  // Empty selects EnergyModel::Default(levels).
  std::vector<double> link_energy_per_bit;
  double filter_energy_per_lookup = 8.0;

  NetworkSpec network = NetworkSpec::Default();
  std::uint64_t network_seed = 1;

  MappingSource mapping_source = MappingSource::kGenerated;
  MappingOptions mapping;  // strategy, capacity, probability, base seed
  std::filesystem::path mapping_file;
  // Mapping r uses seed mapping.seed + r. Forced to 1 for a mapping file.
  int repetitions = 50;

  TraceSource trace_source = TraceSource::kSynth;
  std::filesystem::path trace_file;
  std::uint32_t trace_steps = 400;
  double trace_rate = 0.05;
  std::uint64_t trace_seed = 1;

  std::filesystem::path output_dir = "results";

  TreeConfig tree() const { return TreeConfig(fan_out, levels); }
  EnergyModel energy() const;

  // Throws ConfigError listing every problem found.
  void Validate() const;
};

ExperimentConfig ParseExperimentConfig(std::istream& in);
// Relative file paths inside the config are resolved against the config
// file's directory. Throws std::runtime_error if the file cannot be read.
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

// "recurrent:100,feedforward:100"; kinds may be abbreviated to r and f.
std::vector<Layer> ParseLayers(std::string_view text);
std::string LayersToText(const std::vector<Layer>& layers);

}  // namespace hbsnoc::tools

#endif  // HBSNOC_TOOLS_EXPERIMENT_CONFIG_H_
