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

// Multicast destination encodings for a k-ary tree of neural cores.
//
// Four schemes are supported:
//
//   FBS      one bit per core; exact.
//   Symbol   one {0,1,*} symbol per binary index bit; a wildcard matches
//            both values. Covers are subcubes of the index space.
//   HBS      one k-bit child mask per tree level. Covers are Cartesian
//            products of the per-level digit sets.
//   Unicast  an explicit ascending list of targets, sent one packet each.
//
// Core index digits are root-level first: digit 0 is the most significant
// base-k digit, and symbol 0 is the most significant index bit. With
// k = 2^m each HBS level therefore corresponds to m consecutive symbols.

#ifndef HBSNOC_ADDRESS_H_
#define HBSNOC_ADDRESS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "hbsnoc/destination_set.h"
#include "hbsnoc/tree_config.h"

namespace hbsnoc {

enum class Scheme { kFbs, kSymbol, kHbs, kUnicast };

inline constexpr Scheme kAllSchemes[] = {Scheme::kFbs, Scheme::kSymbol,
                                         Scheme::kHbs, Scheme::kUnicast};

// "fbs", "symbol", "hbs", "unicast".
std::string_view SchemeName(Scheme scheme);

// Inverse of SchemeName (case-insensitive). Throws std::invalid_argument.
Scheme ParseScheme(std::string_view name);

// Region-based schemes may cover cores outside the destination set.
inline bool IsRegionBased(Scheme scheme) {
  return scheme == Scheme::kSymbol || scheme == Scheme::kHbs;
}

enum class Symbol : std::uint8_t { kZero, kOne, kStar };

struct FbsAddress {
  // Bit i set iff core i is a destination. Size N.
  boost::dynamic_bitset<> mask;

  friend bool operator==(const FbsAddress&, const FbsAddress&) = default;
};

struct SymbolAddress {
  // log2(N) symbols, most significant index bit first.
  std::vector<Symbol> symbols;

  friend bool operator==(const SymbolAddress&, const SymbolAddress&) = default;
};

struct HbsAddress {
  // L masks of k bits, root level first. Bit d selects child digit d.
  std::vector<std::uint64_t> masks;

  friend bool operator==(const HbsAddress&, const HbsAddress&) = default;
};

struct UnicastAddress {
  // Strictly ascending core indices.
  std::vector<CoreIndex> targets;

  friend bool operator==(const UnicastAddress&, const UnicastAddress&) =
      default;
};

using MulticastAddress =
    std::variant<FbsAddress, SymbolAddress, HbsAddress, UnicastAddress>;

Scheme SchemeOf(const MulticastAddress& addr);

// All encoders throw std::invalid_argument if a destination is outside the
// tree. Emptiness is already excluded by DestinationSet.
FbsAddress EncodeFbs(const DestinationSet& dests, const TreeConfig& cfg);

// Minimal covering symbol string. Throws std::invalid_argument when N is not
// a power of two.
SymbolAddress EncodeSymbol(const DestinationSet& dests, const TreeConfig& cfg);

// Minimal covering per-level masks: level l mask is the union of digit l
// over all destinations.
HbsAddress EncodeHbs(const DestinationSet& dests, const TreeConfig& cfg);

UnicastAddress EncodeUnicast(const DestinationSet& dests);

MulticastAddress Encode(Scheme scheme, const DestinationSet& dests,
                        const TreeConfig& cfg);

// Throws std::invalid_argument if `addr` is not well formed for `cfg`:
// wrong FBS/symbol/mask width, a zero mask, or an unsorted unicast list.
void ValidateAddress(const MulticastAddress& addr, const TreeConfig& cfg);

// Cores reached by the address, ascending. Validates first.
DestinationSet CoveredSet(const MulticastAddress& addr, const TreeConfig& cfg);

// |CoveredSet(addr)| without materializing it. Validates first.
std::uint64_t CoverSize(const MulticastAddress& addr, const TreeConfig& cfg);

// Whether `core` is in CoveredSet(addr). Assumes a valid address.
bool Covers(const MulticastAddress& addr, CoreIndex core, const TreeConfig& cfg);

// |cover| - |dests|. Throws std::logic_error if the cover misses a
// destination, which indicates an encoder bug.
std::uint64_t Overcoverage(const MulticastAddress& addr,
                           const DestinationSet& dests, const TreeConfig& cfg);

// Cyclic left rotation by one level: [m1, m2, ..., mL] -> [m2, ..., mL, m1].
HbsAddress RotateHbs(const HbsAddress& addr);

// Cyclic left rotation of a symbol string by `count` symbols.
SymbolAddress RotateSymbols(const SymbolAddress& addr, int count);

struct RoutingBitWidth {
  Scheme scheme;
  int bits;
};

// Per-packet routing field width: FBS N, Symbol 2*log2(N), HBS k*L,
// Unicast ceil(log2(N)). Throws std::invalid_argument for Symbol with N not
// a power of two.
RoutingBitWidth RoutingBitWidthOf(Scheme scheme, const TreeConfig& cfg);

// Canonical text: FBS as N binary digits with bit N-1 leftmost; Symbol as a
// {0,1,*} string; HBS as L slash-separated k-bit masks (bit k-1 leftmost);
// Unicast as comma-separated decimal indices.
std::string ToText(const MulticastAddress& addr, const TreeConfig& cfg);

// Inverse of ToText. The result is validated against `cfg`.
MulticastAddress ParseAddress(Scheme scheme, std::string_view text,
                              const TreeConfig& cfg);

}  // namespace hbsnoc

#endif  // HBSNOC_ADDRESS_H_
