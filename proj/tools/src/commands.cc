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

#include "hbsnoc/tools/commands.h"

#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "hbsnoc/destination_set.h"
#include "hbsnoc/scaling.h"
#include "hbsnoc/trace_io.h"
#include "hbsnoc/tools/experiment.h"
#include "hbsnoc/tools/experiment_config.h"

namespace hbsnoc::tools {
namespace {

// Exact integer log; nullopt unless n is a power of base.
std::optional<int> ExactLog(std::uint64_t n, std::uint64_t base) {
  int levels = 0;
  while (n > 1 && n % base == 0) {
    n /= base;
    ++levels;
  }
  if (n != 1) return std::nullopt;
  return levels;
}

// Writes to `path`, or to `fallback` when the path is empty.
template <typename Fn>
void WriteOutput(const std::filesystem::path& path, std::ostream& fallback,
                 Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  write(file);
  file.close();
  if (!file) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

TreeConfig ResolveTree(const TreeOptions& options) {
  if (!options.cores) {
    return TreeConfig(options.fan_out.value_or(4), options.levels.value_or(2));
  }
  const std::uint64_t n = *options.cores;
  if (n < 2) throw std::invalid_argument("--n must be at least 2");
  int k = 0;
  int levels = 0;
  if (options.fan_out) {
    k = *options.fan_out;
    if (k < 2) throw std::invalid_argument("--k must be at least 2");
    auto l = ExactLog(n, static_cast<std::uint64_t>(k));
    if (!l) {
      throw std::invalid_argument("--n " + std::to_string(n) +
                                  " is not a power of --k " + std::to_string(k));
    }
    levels = *l;
  } else if (IsPowerOfTwo(n)) {
    k = 2;
    levels = FloorLog2(n);
  } else {
    if (n > static_cast<std::uint64_t>(kMaxFanOut)) {
      throw std::invalid_argument("--n " + std::to_string(n) +
                                  " is not a power of two; pass --k as well");
    }
    k = static_cast<int>(n);
    levels = 1;
  }
  if (options.levels && *options.levels != levels) {
    throw std::invalid_argument("--levels " + std::to_string(*options.levels) +
                                " does not match --n " + std::to_string(n));
  }
  return TreeConfig(k, levels);
}

void CmdEncode(const EncodeOptions& options, std::ostream& out) {
  const TreeConfig cfg = ResolveTree(options.tree);
  const Scheme scheme = ParseScheme(options.scheme);
  const DestinationSet dests = DestinationSet::FromMembers(
      ParseCoreList(options.dests), cfg.core_count());
  const MulticastAddress addr = Encode(scheme, dests, cfg);
  const DestinationSet cover = CoveredSet(addr, cfg);
  out << "scheme: " << SchemeName(scheme) << "\n"
      << "tree: k=" << cfg.fan_out() << " L=" << cfg.levels()
      << " N=" << cfg.core_count() << "\n"
      << "address: " << ToText(addr, cfg) << "\n"
      << "routing_bits: " << RoutingBitWidthOf(scheme, cfg).bits << "\n"
      << "cover: " << cover.ToString() << "\n"
      << "overcoverage: " << Overcoverage(addr, dests, cfg) << "\n";
}

void CmdDecode(const DecodeOptions& options, std::ostream& out) {
  const TreeConfig cfg = ResolveTree(options.tree);
  const Scheme scheme = ParseScheme(options.scheme);
  const MulticastAddress addr = ParseAddress(scheme, options.address, cfg);
  const DestinationSet cover = CoveredSet(addr, cfg);
  out << "cover: " << cover.ToString() << "\n"
      << "size: " << cover.size() << "\n";
}

void CmdScaling(const ScalingOptions& options, std::ostream& out) {
  if (options.n_values.empty()) {
    throw std::invalid_argument("--n needs at least one value");
  }
  for (int k : options.k_values) {
    if (k < 2) throw std::invalid_argument("--k values must be at least 2");
  }
  const std::vector<ScalingRow> rows =
      EmitScalingTable(options.n_values, options.k_values);
  WriteOutput(options.output, out,
              [&](std::ostream& os) { WriteScalingCsv(os, rows); });
}

void CmdSimulate(const SimulateOptions& options, std::ostream& out) {
  ExperimentConfig config = LoadExperimentConfig(options.config);
  if (!options.output_dir.empty()) config.output_dir = options.output_dir;
  const PreparedExperiment prepared = Prepare(config);
  const ExperimentResult result = RunExperiment(prepared, options.jobs);
  WriteReports(config.output_dir, prepared, result);

  const nlohmann::ordered_json summary = Summarize(prepared, result);
  out << "runs: " << result.runs.size() << " (" << config.schemes.size()
      << " schemes x " << config.repetitions << " mappings)\n";
  for (const auto& [name, s] : summary["schemes"].items()) {
    out << std::left << std::setw(8) << name
        << " mean_total_energy=" << FormatDouble(s["total_energy"]["mean"].get<double>())
        << " illegal_deliveries=" << FormatDouble(s["illegal_deliveries"]["sum"].get<double>())
        << "\n";
  }
  const auto& ratio = summary["illegal_ratio_hbs_to_symbol"];
  if (!ratio.is_null()) {
    out << "illegal_ratio_hbs_to_symbol=" << FormatDouble(ratio.get<double>()) << "\n";
  }
  out << "reports: " << config.output_dir.string() << "\n";
}

void CmdTraceGen(const TraceGenOptions& options, std::ostream& out) {
  NetworkSpec spec = NetworkSpec::Default();
  std::uint32_t steps = options.steps;
  double rate = options.rate;
  std::uint64_t seed = options.seed;
  if (!options.config.empty()) {
    const ExperimentConfig config = LoadExperimentConfig(options.config);
    spec = config.network;
    steps = config.trace_steps;
    rate = config.trace_rate;
    seed = config.trace_seed;
  } else {
    spec.layers = ParseLayers(options.layers);
    spec.Validate();
    if (steps < 1) throw std::invalid_argument("--steps must be at least 1");
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw std::invalid_argument("--rate must be in [0, 1]");
    }
  }
  const SpikeTrace trace = SynthTrace(spec, steps, rate, seed);
  WriteOutput(options.output, out,
              [&](std::ostream& os) { WriteTrace(os, trace); });
}

}  // namespace hbsnoc::tools
