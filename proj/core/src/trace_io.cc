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

#include "hbsnoc/trace_io.h"

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hbsnoc {
namespace {

constexpr std::string_view kTraceHeader = "timestep,neuron_id";
constexpr std::string_view kMappingHeader = "neuron_id,core_index";

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

std::uint32_t ParseField(std::string_view field, std::size_t line_no) {
  std::uint32_t value = 0;
  auto [end, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || end != field.data() + field.size()) {
    throw std::invalid_argument("line " + std::to_string(line_no) +
                                ": malformed number '" + std::string(field) +
                                "'");
  }
  return value;
}

std::pair<std::uint32_t, std::uint32_t> ParseRow(std::string_view line,
                                                 std::size_t line_no) {
  const std::size_t comma = line.find(',');
  if (comma == std::string_view::npos ||
      line.find(',', comma + 1) != std::string_view::npos) {
    throw std::invalid_argument("line " + std::to_string(line_no) +
                                ": expected two comma-separated fields");
  }
  return {ParseField(Trim(line.substr(0, comma)), line_no),
          ParseField(Trim(line.substr(comma + 1)), line_no)};
}

}  // namespace

void WriteTrace(std::ostream& out, const SpikeTrace& trace) {
  out << kTraceHeader << '\n';
  for (const Spike& s : trace.events) {
    out << s.timestep << ',' << s.neuron << '\n';
  }
}

SpikeTrace ReadTrace(std::istream& in, std::optional<std::uint32_t> steps) {
  std::string line;
  if (!std::getline(in, line) || Trim(line) != kTraceHeader) {
    throw std::invalid_argument("trace file must start with header '" +
                                std::string(kTraceHeader) + "'");
  }
  SpikeTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = Trim(line);
    if (row.empty()) continue;
    const auto [t, n] = ParseRow(row, line_no);
    if (!trace.events.empty() && t < trace.events.back().timestep) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": timesteps must be nondecreasing");
    }
    if (steps && t >= *steps) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": timestep " + std::to_string(t) +
                                  " outside [0, " + std::to_string(*steps) +
                                  ")");
    }
    trace.events.push_back({t, n});
  }
  trace.steps = steps ? *steps
                      : (trace.events.empty() ? 0
                                              : trace.events.back().timestep + 1);
  return trace;
}

void WriteMapping(std::ostream& out, const NeuronMapping& mapping) {
  out << kMappingHeader << '\n';
  for (std::size_t n = 0; n < mapping.assignment.size(); ++n) {
    out << n << ',' << mapping.assignment[n] << '\n';
  }
}

NeuronMapping ReadMapping(std::istream& in, CoreIndex core_count,
                          std::uint32_t core_capacity) {
  std::vector<std::optional<CoreIndex>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = Trim(line);
    if (row.empty()) continue;
    if (line_no == 1 && row == kMappingHeader) continue;
    const auto [neuron, core] = ParseRow(row, line_no);
    if (neuron >= rows.size()) rows.resize(std::size_t{neuron} + 1);
    if (rows[neuron]) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": neuron " + std::to_string(neuron) +
                                  " mapped twice");
    }
    rows[neuron] = core;
  }
  NeuronMapping mapping;
  mapping.core_count = core_count;
  mapping.core_capacity = core_capacity;
  mapping.assignment.reserve(rows.size());
  for (std::size_t n = 0; n < rows.size(); ++n) {
    if (!rows[n]) {
      throw std::invalid_argument("neuron " + std::to_string(n) +
                                  " missing from mapping file");
    }
    mapping.assignment.push_back(*rows[n]);
  }
  mapping.Validate();
  return mapping;
}

}  // namespace hbsnoc
