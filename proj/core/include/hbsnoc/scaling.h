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

// Closed-form routing-bit and addressing-capability laws for the four
// addressing schemes, plus an exhaustive enumeration that counts distinct
// covers directly.

#ifndef HBSNOC_SCALING_H_
#define HBSNOC_SCALING_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hbsnoc/address.h"
#include "hbsnoc/tree_config.h"

namespace hbsnoc {

using BigInt = boost::multiprecision::cpp_int;

// Routing bits per multicast: FBS N, Symbol 2 log2 N, HBS k log_k N, and for
// unicast-based multicast the worst-case total over one LUT iteration,
// N log2 N. `k` is only read for HBS.
//
// Throws std::invalid_argument when N is not a power of k (HBS), not a power
// of two (Symbol, Unicast), or is zero.
std::uint64_t RoutingBitsFormula(Scheme scheme, std::uint64_t n, int k = 0);

// Number of distinct nonempty covers: FBS and Unicast 2^N - 1, Symbol
// 3^(log2 N), HBS (2^k - 1)^(log_k N). Exact.
BigInt CapabilityFormula(Scheme scheme, std::uint64_t n, int k = 0);

// Worst-case source-side LUT bits per source neuron. One entry for the
// parallel schemes, N entries of log2 N bits for unicast.
std::uint64_t LutBitsPerSource(Scheme scheme, std::uint64_t n, int k = 0);

// k / log2(k). Throws std::invalid_argument for k < 2.
double RoutingScalingFactor(int k);

// (2^k - 1)^(1 / log2(k)). Throws std::invalid_argument for k < 2.
double CapabilityScalingFactor(int k);

class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Upper bound on the number of cover elements EnumerateCapability may
// materialize.
inline constexpr std::uint64_t kEnumerationBudget = std::uint64_t{1} << 31;

// Counts distinct covered sets over every well-formed address of `scheme`
// for `cfg` by decoding each address. Throws EnumerationBudgetExceeded when
// N > 24 (FBS, Unicast), N > 4096 (Symbol, HBS), or the predicted work is
// above kEnumerationBudget.
BigInt EnumerateCapability(Scheme scheme, const TreeConfig& cfg);

// Predicted number of cover elements decoded by EnumerateCapability.
BigInt EnumerationWork(Scheme scheme, const TreeConfig& cfg);

struct ScalingRow {
  Scheme scheme;
  std::uint64_t n;
  std::optional<int> k;  // HBS only
  std::uint64_t routing_bits;
  BigInt capability;
  std::uint64_t lut_bits_per_source;

  friend bool operator==(const ScalingRow&, const ScalingRow&) = default;
};

// For each N in order: FBS, Symbol, one HBS row per k, Unicast. Rows whose
// scheme is undefined for N (Symbol/Unicast when N is not a power of two,
// HBS when N is not a power of k) are omitted.
std::vector<ScalingRow> EmitScalingTable(std::span<const std::uint64_t> n_values,
                                         std::span<const int> k_values);

// Header `scheme,N,k,routing_bits,capability,lut_bits_per_source`; k is empty
// for non-HBS rows and capability is printed in full decimal.
void WriteScalingCsv(std::ostream& out, std::span<const ScalingRow> rows);

}  // namespace hbsnoc

#endif  // HBSNOC_SCALING_H_
