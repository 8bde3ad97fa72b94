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

#include <exception>
#include <functional>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "hbsnoc/tools/commands.h"
#include "hbsnoc/tools/experiment_config.h"

namespace hbsnoc::tools {
namespace {

void AddTreeOptions(CLI::App* cmd, TreeOptions& tree) {
  cmd->add_option("--k", tree.fan_out, "Fan-out per switch (default 4)");
  cmd->add_option("--levels", tree.levels, "Tree depth L (default 2)");
  cmd->add_option("--n", tree.cores, "Core count N; derives k and L");
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app("Multicast addressing codecs and tree NoC simulator", "hbsnoc");
  app.require_subcommand(1);

  std::function<void()> run;

  EncodeOptions encode;
  auto* encode_cmd = app.add_subcommand("encode", "Encode a destination set");
  encode_cmd->add_option("--scheme", encode.scheme, "fbs, symbol, hbs, unicast")
      ->required();
  encode_cmd->add_option("--dests", encode.dests, "Core list, e.g. 0,5")
      ->required();
  AddTreeOptions(encode_cmd, encode.tree);
  encode_cmd->callback([&] { run = [&] { CmdEncode(encode, out); }; });

  DecodeOptions decode;
  auto* decode_cmd = app.add_subcommand("decode", "Print an address's cover");
  decode_cmd->add_option("--scheme", decode.scheme, "fbs, symbol, hbs, unicast")
      ->required();
  decode_cmd->add_option("--address", decode.address, "Canonical address text")
      ->required();
  AddTreeOptions(decode_cmd, decode.tree);
  decode_cmd->callback([&] { run = [&] { CmdDecode(decode, out); }; });

  ScalingOptions scaling;
  auto* scaling_cmd =
      app.add_subcommand("scaling", "Write the routing-bit/capability table");
  scaling_cmd->add_option("--n", scaling.n_values, "Core counts")
      ->delimiter(',');
  scaling_cmd->add_option("--k", scaling.k_values, "HBS fan-outs")
      ->delimiter(',');
  scaling_cmd->add_option("--output,-o", scaling.output,
                          "CSV path (default stdout)");
  scaling_cmd->callback([&] { run = [&] { CmdScaling(scaling, out); }; });

  SimulateOptions simulate;
  simulate.jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Run a scheme x mapping experiment");
  simulate_cmd->add_option("--config,-c", simulate.config, "INI config file")
      ->required();
  simulate_cmd->add_option("--output-dir", simulate.output_dir,
                           "Overrides [output] dir");
  simulate_cmd->add_option("--jobs,-j", simulate.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
  simulate_cmd->callback([&] { run = [&] { CmdSimulate(simulate, out); }; });

  TraceGenOptions trace;
  auto* trace_cmd = app.add_subcommand("trace-gen", "Write a synthetic trace");
  trace_cmd->add_option("--config,-c", trace.config,
                        "Take network and [trace] settings from a config");
  trace_cmd->add_option("--layers", trace.layers, "e.g. recurrent:100,...");
  trace_cmd->add_option("--steps", trace.steps, "Time steps");
  trace_cmd->add_option("--rate", trace.rate, "Firing probability per step");
  trace_cmd->add_option("--seed", trace.seed, "RNG seed");
  trace_cmd->add_option("--output,-o", trace.output,
                        "Trace path (default stdout)");
  trace_cmd->callback([&] { run = [&] { CmdTraceGen(trace, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    run();
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace hbsnoc::tools
