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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "hbsnoc/tools/commands.h"

namespace hbsnoc::tools {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hbsnoc");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

// A fresh directory named after the running test.
fs::path ScratchDir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  fs::path dir = fs::temp_directory_path() /
                 (std::string("hbsnoc_cli_") + info->name());
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path WriteConfig(const fs::path& dir, const std::string& text) {
  const fs::path path = dir / "experiment.ini";
  std::ofstream(path) << text;
  return path;
}

const char kSmallConfig[] = R"(schemes = fbs,symbol,hbs,unicast
[network]
layers = recurrent:40,feedforward:40
seed = 3
[mapping]
capacity = 8
repetitions = 4
seed = 11
[trace]
steps = 30
rate = 0.1
seed = 5
)";

TEST(CliEncode, HbsExample) {
  const CliResult r =
      Cli({"encode", "--scheme", "hbs", "--k", "4", "--levels", "2", "--dests",
           "0,5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("address: 0011/0011\n"), std::string::npos);
  EXPECT_NE(r.out.find("cover: {0,1,4,5}\n"), std::string::npos);
  EXPECT_NE(r.out.find("overcoverage: 2\n"), std::string::npos);
}

TEST(CliEncode, FbsSingleBit) {
  const CliResult r = Cli({"encode", "--scheme", "fbs", "--dests", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("address: 0000000000001000\n"), std::string::npos);
  EXPECT_NE(r.out.find("overcoverage: 0\n"), std::string::npos);
}

TEST(CliEncode, SymbolWithN) {
  const CliResult r =
      Cli({"encode", "--scheme", "symbol", "--dests", "0,1", "--n", "16"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("address: 000*\n"), std::string::npos);
}

TEST(CliEncode, ValidationErrorsExitOne) {
  EXPECT_EQ(Cli({"encode", "--scheme", "nope", "--dests", "1"}).code, 1);
  EXPECT_EQ(Cli({"encode", "--scheme", "fbs", "--dests", "16"}).code, 1);
  EXPECT_EQ(Cli({"encode", "--scheme", "fbs", "--dests", ""}).code, 1);
  EXPECT_EQ(Cli({"encode", "--scheme", "fbs", "--dests", "1,x"}).code, 1);
  EXPECT_EQ(Cli({"encode", "--dests", "1"}).code, 1);
  EXPECT_EQ(Cli({"encode", "--scheme", "hbs", "--n", "12", "--k", "4",
                 "--dests", "1"})
                .code,
            1);
  EXPECT_EQ(Cli({"frobnicate"}).code, 1);
  EXPECT_EQ(Cli({}).code, 1);
}

TEST(CliEncode, SymbolRejectedForNonPowerOfTwo) {
  const CliResult r =
      Cli({"encode", "--scheme", "symbol", "--k", "3", "--levels", "2",
           "--dests", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("power-of-two"), std::string::npos) << r.err;
}

TEST(CliDecode, HbsCover) {
  const CliResult r = Cli({"decode", "--scheme", "hbs", "--address", "0110/0001"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "cover: {4,8}\nsize: 2\n");
  EXPECT_EQ(Cli({"decode", "--scheme", "hbs", "--address", "0000/0001"}).code,
            1);
}

TEST(CliDecode, SymbolCover) {
  const CliResult r =
      Cli({"decode", "--scheme", "symbol", "--n", "16", "--address", "*0*1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "cover: {1,3,9,11}\nsize: 4\n");
}

TEST(CliScaling, DefaultTable) {
  const CliResult r = Cli({"scaling"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::vector<std::string> lines = Lines(r.out);
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(lines[0], "scheme,N,k,routing_bits,capability,lut_bits_per_source");
  std::vector<std::string> n16;
  for (const std::string& line : lines) {
    if (line.find(",16,") != std::string::npos &&
        line.find(",16,") == line.find(',')) {
      n16.push_back(line);
    }
  }
  EXPECT_EQ(n16, (std::vector<std::string>{
                     "fbs,16,,16,65535,16",
                     "symbol,16,,8,81,8",
                     "hbs,16,2,8,81,8",
                     "hbs,16,4,8,225,8",
                     "unicast,16,,64,65535,64",
                 }));
}

TEST(CliScaling, SingleNSingleKGivesOneRowPerScheme) {
  const CliResult r = Cli({"scaling", "--n", "16", "--k", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Lines(r.out).size(), 1u + 4u);
}

TEST(CliScaling, FileOutputIsDeterministic) {
  const fs::path dir = ScratchDir();
  ASSERT_EQ(Cli({"scaling", "-o", (dir / "a.csv").string()}).code, 0);
  ASSERT_EQ(Cli({"scaling", "-o", (dir / "b.csv").string()}).code, 0);
  const std::string a = ReadFile(dir / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, ReadFile(dir / "b.csv"));
  EXPECT_EQ(a, Cli({"scaling"}).out);
}

TEST(CliScaling, UnwritableOutputExitsTwo) {
  const CliResult r =
      Cli({"scaling", "-o", "/nonexistent-dir/hbsnoc/scaling.csv"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("cannot write"), std::string::npos);
}

TEST(CliTraceGen, ZeroRateIsHeaderOnly) {
  const CliResult r = Cli({"trace-gen", "--rate", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "timestep,neuron_id\n");
}

TEST(CliTraceGen, FixedSeedIsByteIdentical) {
  const fs::path dir = ScratchDir();
  for (const char* name : {"a.csv", "b.csv"}) {
    ASSERT_EQ(Cli({"trace-gen", "--seed", "9", "-o", (dir / name).string()})
                  .code,
              0);
  }
  EXPECT_EQ(ReadFile(dir / "a.csv"), ReadFile(dir / "b.csv"));
  EXPECT_NE(ReadFile(dir / "a.csv"),
            Cli({"trace-gen", "--seed", "10"}).out);
}

TEST(CliTraceGen, DefaultLineCountWithinBinomialBounds) {
  const CliResult r = Cli({"trace-gen", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const double events = static_cast<double>(Lines(r.out).size() - 1);
  const double n = 600.0 * 400.0, p = 0.05;
  const double sigma = std::sqrt(n * p * (1 - p));
  EXPECT_LT(std::abs(events - n * p), 5 * sigma);
}

TEST(CliTraceGen, RejectsBadRate) {
  EXPECT_EQ(Cli({"trace-gen", "--rate", "1.5"}).code, 1);
  EXPECT_EQ(Cli({"trace-gen", "--layers", "sideways:10"}).code, 1);
}

TEST(CliSimulate, WritesReportsAndIsDeterministic) {
  const fs::path dir = ScratchDir();
  const fs::path config = WriteConfig(dir, kSmallConfig);
  const CliResult a = Cli({"simulate", "-c", config.string(), "--output-dir",
                           (dir / "a").string(), "-j", "1"});
  ASSERT_EQ(a.code, 0) << a.err;
  const CliResult b = Cli({"simulate", "-c", config.string(), "--output-dir",
                           (dir / "b").string(), "-j", "3"});
  ASSERT_EQ(b.code, 0) << b.err;
  for (const char* file : {"runs.csv", "runs.json", "summary.json"}) {
    const std::string text = ReadFile(dir / "a" / file);
    EXPECT_FALSE(text.empty()) << file;
    EXPECT_EQ(text, ReadFile(dir / "b" / file)) << file;
  }
  const std::vector<std::string> rows = Lines(ReadFile(dir / "a" / "runs.csv"));
  ASSERT_EQ(rows.size(), 1u + 4u * 4u);
  EXPECT_EQ(rows[1].substr(0, 6), "0,fbs,");
  EXPECT_EQ(rows[5].substr(0, 9), "0,symbol,");
}

TEST(CliSimulate, FbsNeverDeliversIllegally) {
  const fs::path dir = ScratchDir();
  const fs::path config = WriteConfig(dir, kSmallConfig);
  ASSERT_EQ(Cli({"simulate", "-c", config.string(), "--output-dir",
                 (dir / "out").string()})
                .code,
            0);
  const auto runs =
      nlohmann::json::parse(ReadFile(dir / "out" / "runs.json"));
  int fbs = 0;
  for (const auto& run : runs) {
    if (run["scheme"] == "fbs" || run["scheme"] == "unicast") {
      EXPECT_EQ(run["illegal_deliveries"], 0);
      EXPECT_EQ(run["illegal_filtering_energy"], 0.0);
      ++fbs;
    }
  }
  EXPECT_EQ(fbs, 8);
}

TEST(CliSimulate, UnicastUsesLog2NFieldPlusTag) {
  const fs::path dir = ScratchDir();
  const fs::path config = WriteConfig(
      dir, std::string("schemes = unicast\ntag_bits = 12\n") +
               std::string(kSmallConfig).substr(
                   std::string(kSmallConfig).find('\n') + 1));
  const CliResult r = Cli({"simulate", "-c", config.string(), "--output-dir",
                           (dir / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto runs =
      nlohmann::json::parse(ReadFile(dir / "out" / "runs.json"));
  ASSERT_EQ(runs.size(), 4u);
  for (const auto& run : runs) {
    const std::uint64_t traversals = run["link_traversals"];
    EXPECT_EQ(run["link_bit_traversals"].get<std::uint64_t>(),
              traversals * (4 + 12));
    EXPECT_EQ(run["packets_injected"].get<std::uint64_t>(),
              run["legal_deliveries"].get<std::uint64_t>());
  }
}

TEST(CliSimulate, InvalidConfigExitsOneWithFieldPaths) {
  const fs::path dir = ScratchDir();
  const fs::path config = WriteConfig(dir,
                                      "schemes = fbs,symbol\n"
                                      "colour = blue\n"
                                      "[tree]\nfan_out = 3\nlevels = 3\n"
                                      "[mapping]\ncapacity = ten\n"
                                      "[trace]\nrate = 2\n");
  const CliResult r = Cli({"simulate", "-c", config.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("colour: unknown key"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("mapping.capacity: expected a number"),
            std::string::npos)
      << r.err;
  EXPECT_NE(r.err.find("trace.rate: must be in [0, 1]"), std::string::npos)
      << r.err;
  EXPECT_NE(r.err.find("schemes: symbol requires the core count N"),
            std::string::npos)
      << r.err;
}

TEST(CliSimulate, MissingFilesExitTwo) {
  const fs::path dir = ScratchDir();
  EXPECT_EQ(Cli({"simulate", "-c", (dir / "absent.ini").string()}).code, 2);
  const fs::path config = WriteConfig(
      dir, "[trace]\nsource = file\nfile = no_such_trace.csv\n");
  EXPECT_EQ(Cli({"simulate", "-c", config.string()}).code, 2);
}

}  // namespace
}  // namespace hbsnoc::tools
