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

#ifndef HBSNOC_TOOLS_COMMANDS_H_
#define HBSNOC_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hbsnoc/address.h"
#include "hbsnoc/tree_config.h"

namespace hbsnoc::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

// Tree selection shared by encode and decode. With `n` alone, a power of two
// gives k = 2 and L = log2 N, anything else a single level of N cores. With
// neither, k = 4 and L = 2.
struct TreeOptions {
  std::optional<int> fan_out;
  std::optional<int> levels;
  std::optional<std::uint64_t> cores;
};

TreeConfig ResolveTree(const TreeOptions& options);

struct EncodeOptions {
  std::string scheme;
  std::string dests;
  TreeOptions tree;
};

// Prints the canonical address, its routing width, cover and overcoverage.
void CmdEncode(const EncodeOptions& options, std::ostream& out);

struct DecodeOptions {
  std::string scheme;
  std::string address;
  TreeOptions tree;
};

// Prints the covered core set and its size.
void CmdDecode(const DecodeOptions& options, std::ostream& out);

struct ScalingOptions {
  std::vector<std::uint64_t> n_values = {4, 16, 64, 256, 1024, 4096};
  std::vector<int> k_values = {2, 4};
  // Empty writes to `out`.
  std::filesystem::path output;
};

void CmdScaling(const ScalingOptions& options, std::ostream& out);

struct SimulateOptions {
  std::filesystem::path config;
  // Overrides [output] dir when set.
  std::filesystem::path output_dir;
  unsigned jobs = 1;
};

// Runs the experiment, writes the reports and prints a short summary.
void CmdSimulate(const SimulateOptions& options, std::ostream& out);

struct TraceGenOptions {
  // When set, the network and [trace] settings come from this config and the
  // flags below are ignored.
  std::filesystem::path config;
  std::string layers = "recurrent:100,recurrent:100,recurrent:100,"
                       "feedforward:100,feedforward:100,feedforward:100";
  std::uint32_t steps = 400;
  double rate = 0.05;
  std::uint64_t seed = 1;
  // Empty writes to `out`.
  std::filesystem::path output;
};

void CmdTraceGen(const TraceGenOptions& options, std::ostream& out);

// Parses argv, runs one subcommand and maps failures to exit codes: 1 for
// usage and validation errors, 2 for runtime and I/O errors.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace hbsnoc::tools

#endif  // HBSNOC_TOOLS_COMMANDS_H_
