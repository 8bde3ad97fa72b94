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

#ifndef HBSNOC_TRACE_IO_H_
#define HBSNOC_TRACE_IO_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>

#include "hbsnoc/traffic.h"

namespace hbsnoc {

// "timestep,neuron_id" header followed by one decimal row per spike.
void WriteTrace(std::ostream& out, const SpikeTrace& trace);

// Parses the format written by WriteTrace. Rows must be nondecreasing in
// timestep. When `steps` is given every timestep must be below it; otherwise
// steps is one past the last timestep. Throws std::invalid_argument on
// malformed input.
SpikeTrace ReadTrace(std::istream& in,
                     std::optional<std::uint32_t> steps = std::nullopt);

// "neuron_id,core_index" header followed by one row per neuron.
void WriteMapping(std::ostream& out, const NeuronMapping& mapping);

// Rows may appear in any order but must cover neurons 0..n-1 exactly once.
// The header line is optional. The result is validated against the given
// core count and capacity.
NeuronMapping ReadMapping(std::istream& in, CoreIndex core_count,
                          std::uint32_t core_capacity);

}  // namespace hbsnoc

#endif  // HBSNOC_TRACE_IO_H_
