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

#include "hbsnoc/scaling.h"

#include <bit>
#include <cmath>
#include <string>

namespace hbsnoc {
namespace {

// L such that k^L == n, if any (L >= 1).
std::optional<int> ExactLog(std::uint64_t n, std::uint64_t k) {
  if (k < 2 || n < k) return std::nullopt;
  int levels = 0;
  while (n % k == 0) {
    n /= k;
    ++levels;
  }
  if (n != 1) return std::nullopt;
  return levels;
}

int Log2OrThrow(Scheme scheme, std::uint64_t n) {
  if (n < 2 || !IsPowerOfTwo(n)) {
    throw std::invalid_argument(std::string(SchemeName(scheme)) +
                                " requires N to be a power of two >= 2, got " +
                                std::to_string(n));
  }
  return FloorLog2(n);
}

int HbsLevelsOrThrow(std::uint64_t n, int k) {
  if (k < 2) {
    throw std::invalid_argument("hbs requires k >= 2, got " +
                                std::to_string(k));
  }
  auto levels = ExactLog(n, static_cast<std::uint64_t>(k));
  if (!levels) {
    throw std::invalid_argument("hbs requires N to be a power of k; N=" +
                                std::to_string(n) + ", k=" + std::to_string(k));
  }
  return *levels;
}

BigInt Pow(BigInt base, std::uint64_t exp) {
  BigInt result = 1;
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

void CheckFactorArgument(int k) {
  if (k < 2) {
    throw std::invalid_argument("scaling factor requires k >= 2, got " +
                                std::to_string(k));
  }
}

// Marks keys in a dense bitmap and counts first sightings.
class DistinctCounter {
 public:
  explicit DistinctCounter(int key_bits)
      : seen_(std::size_t{1} << key_bits, false) {}

  void Add(std::uint64_t key) {
    if (!seen_[key]) {
      seen_[key] = true;
      ++distinct_;
    }
  }
  std::uint64_t distinct() const { return distinct_; }

 private:
  std::vector<bool> seen_;
  std::uint64_t distinct_ = 0;
};

std::uint64_t CoverBitmask(const DestinationSet& cover) {
  std::uint64_t key = 0;
  for (CoreIndex c : cover) key |= std::uint64_t{1} << c;
  return key;
}

std::uint64_t EnumerateSubsets(Scheme scheme, const TreeConfig& cfg) {
  const CoreIndex n = cfg.core_count();
  DistinctCounter counter(static_cast<int>(n));
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t m = 1; m < limit; ++m) {
    MulticastAddress addr;
    if (scheme == Scheme::kFbs) {
      addr = FbsAddress{boost::dynamic_bitset<>(n, m)};
    } else {
      UnicastAddress u;
      for (std::uint64_t r = m; r != 0; r &= r - 1) {
        u.targets.push_back(static_cast<CoreIndex>(std::countr_zero(r)));
      }
      addr = std::move(u);
    }
    counter.Add(CoverBitmask(CoveredSet(addr, cfg)));
  }
  return counter.distinct();
}

// Each cover is keyed by its per-bit projection (bits every member has set,
// bits members disagree on). The key identifies the cover exactly once the
// cover is shown to be the full subcube of that projection.
std::uint64_t EnumerateSymbols(const TreeConfig& cfg) {
  const int bits = FloorLog2(cfg.core_count());
  DistinctCounter counter(2 * bits);
  std::vector<int> digits(static_cast<std::size_t>(bits), 0);
  while (true) {
    SymbolAddress addr;
    for (int d : digits) addr.symbols.push_back(static_cast<Symbol>(d));
    const DestinationSet cover = CoveredSet(addr, cfg);
    CoreIndex all_and = ~CoreIndex{0};
    CoreIndex all_or = 0;
    for (CoreIndex c : cover) {
      all_and &= c;
      all_or |= c;
    }
    const CoreIndex free_bits = all_or & ~all_and;
    if (cover.size() != (std::uint64_t{1} << std::popcount(free_bits))) {
      throw std::logic_error("symbol cover is not a subcube: " +
                             cover.ToString());
    }
    counter.Add((std::uint64_t{all_and} << bits) | free_bits);

    int pos = bits - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == 2) {
      digits[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++digits[static_cast<std::size_t>(pos)];
  }
  return counter.distinct();
}

// Each cover is keyed by its per-level digit projections, certified by
// checking that the cover has exactly the product cardinality.
std::uint64_t EnumerateHbs(const TreeConfig& cfg) {
  const int k = cfg.fan_out();
  const int levels = cfg.levels();
  const int key_bits = k * levels;
  if (key_bits > 32) {
    throw EnumerationBudgetExceeded("hbs key space of " +
                                    std::to_string(key_bits) +
                                    " bits is too large to enumerate");
  }
  const std::uint64_t max_mask = (std::uint64_t{1} << k) - 1;
  // One-hot digit per level for every core, packed root level lowest.
  std::vector<std::uint64_t> core_digits(cfg.core_count(), 0);
  for (CoreIndex c = 0; c < cfg.core_count(); ++c) {
    for (int level = 0; level < levels; ++level) {
      core_digits[c] |= (std::uint64_t{1} << DigitAt(c, level, cfg))
                        << (level * k);
    }
  }
  DistinctCounter counter(key_bits);
  HbsAddress addr;
  addr.masks.assign(static_cast<std::size_t>(levels), 1);
  while (true) {
    const DestinationSet cover = CoveredSet(addr, cfg);
    std::uint64_t key = 0;
    for (CoreIndex c : cover) key |= core_digits[c];
    std::uint64_t product = 1;
    for (int level = 0; level < levels; ++level) {
      product *= static_cast<std::uint64_t>(
          std::popcount((key >> (level * k)) & max_mask));
    }
    if (cover.size() != product) {
      throw std::logic_error("hbs cover is not a product set: " +
                             cover.ToString());
    }
    counter.Add(key);

    int pos = levels - 1;
    while (pos >= 0 && addr.masks[static_cast<std::size_t>(pos)] == max_mask) {
      addr.masks[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++addr.masks[static_cast<std::size_t>(pos)];
  }
  return counter.distinct();
}

}  // namespace

std::uint64_t RoutingBitsFormula(Scheme scheme, std::uint64_t n, int k) {
  switch (scheme) {
    case Scheme::kFbs:
      if (n == 0) throw std::invalid_argument("fbs requires N >= 1");
      return n;
    case Scheme::kSymbol:
      return 2 * static_cast<std::uint64_t>(Log2OrThrow(scheme, n));
    case Scheme::kHbs:
      return static_cast<std::uint64_t>(k) *
             static_cast<std::uint64_t>(HbsLevelsOrThrow(n, k));
    case Scheme::kUnicast:
      return n * static_cast<std::uint64_t>(Log2OrThrow(scheme, n));
  }
  throw std::invalid_argument("unknown scheme");
}

BigInt CapabilityFormula(Scheme scheme, std::uint64_t n, int k) {
  switch (scheme) {
    case Scheme::kFbs:
      if (n == 0) throw std::invalid_argument("fbs requires N >= 1");
      return Pow(2, n) - 1;
    case Scheme::kUnicast:
      Log2OrThrow(scheme, n);
      return Pow(2, n) - 1;
    case Scheme::kSymbol:
      return Pow(3, static_cast<std::uint64_t>(Log2OrThrow(scheme, n)));
    case Scheme::kHbs: {
      const int levels = HbsLevelsOrThrow(n, k);
      return Pow(Pow(2, static_cast<std::uint64_t>(k)) - 1,
                 static_cast<std::uint64_t>(levels));
    }
  }
  throw std::invalid_argument("unknown scheme");
}

std::uint64_t LutBitsPerSource(Scheme scheme, std::uint64_t n, int k) {
  return RoutingBitsFormula(scheme, n, k);
}

double RoutingScalingFactor(int k) {
  CheckFactorArgument(k);
  return static_cast<double>(k) / std::log2(static_cast<double>(k));
}

double CapabilityScalingFactor(int k) {
  CheckFactorArgument(k);
  const double kd = static_cast<double>(k);
  return std::pow(std::exp2(kd) - 1.0, 1.0 / std::log2(kd));
}

BigInt EnumerationWork(Scheme scheme, const TreeConfig& cfg) {
  const std::uint64_t n = cfg.core_count();
  switch (scheme) {
    case Scheme::kFbs:
    case Scheme::kUnicast:
      // Sum of |S| over all subsets.
      return BigInt(n) * Pow(2, n - 1);
    case Scheme::kSymbol:
      // Sum over strings of 2^stars = (1 + 1 + 2)^bits = N^2.
      return BigInt(n) * n;
    case Scheme::kHbs: {
      const auto k = static_cast<std::uint64_t>(cfg.fan_out());
      return Pow(BigInt(k) * Pow(2, k - 1),
                 static_cast<std::uint64_t>(cfg.levels()));
    }
  }
  throw std::invalid_argument("unknown scheme");
}

BigInt EnumerateCapability(Scheme scheme, const TreeConfig& cfg) {
  const CoreIndex n = cfg.core_count();
  const bool subset_scheme = scheme == Scheme::kFbs || scheme == Scheme::kUnicast;
  if (subset_scheme && n > 24) {
    throw EnumerationBudgetExceeded(std::string(SchemeName(scheme)) +
                                    " enumeration supports N <= 24, got " +
                                    std::to_string(n));
  }
  if (!subset_scheme && n > 4096) {
    throw EnumerationBudgetExceeded(std::string(SchemeName(scheme)) +
                                    " enumeration supports N <= 4096, got " +
                                    std::to_string(n));
  }
  if (scheme == Scheme::kSymbol) Log2OrThrow(scheme, n);
  const BigInt work = EnumerationWork(scheme, cfg);
  if (work > kEnumerationBudget) {
    throw EnumerationBudgetExceeded(
        std::string(SchemeName(scheme)) + " enumeration for k=" +
        std::to_string(cfg.fan_out()) + ", L=" + std::to_string(cfg.levels()) +
        " would decode " + work.str() + " cover elements (budget " +
        std::to_string(kEnumerationBudget) + ")");
  }
  switch (scheme) {
    case Scheme::kFbs:
    case Scheme::kUnicast:
      return EnumerateSubsets(scheme, cfg);
    case Scheme::kSymbol:
      return EnumerateSymbols(cfg);
    case Scheme::kHbs:
      return EnumerateHbs(cfg);
  }
  throw std::invalid_argument("unknown scheme");
}

std::vector<ScalingRow> EmitScalingTable(std::span<const std::uint64_t> n_values,
                                         std::span<const int> k_values) {
  std::vector<ScalingRow> rows;
  auto add = [&rows](Scheme scheme, std::uint64_t n, std::optional<int> k) {
    const int kk = k.value_or(0);
    rows.push_back(ScalingRow{scheme, n, k, RoutingBitsFormula(scheme, n, kk),
                              CapabilityFormula(scheme, n, kk),
                              LutBitsPerSource(scheme, n, kk)});
  };
  for (std::uint64_t n : n_values) {
    const bool pow2 = n >= 2 && IsPowerOfTwo(n);
    add(Scheme::kFbs, n, std::nullopt);
    if (pow2) add(Scheme::kSymbol, n, std::nullopt);
    for (int k : k_values) {
      if (k >= 2 && ExactLog(n, static_cast<std::uint64_t>(k))) {
        add(Scheme::kHbs, n, k);
      }
    }
    if (pow2) add(Scheme::kUnicast, n, std::nullopt);
  }
  return rows;
}

void WriteScalingCsv(std::ostream& out, std::span<const ScalingRow> rows) {
  out << "scheme,N,k,routing_bits,capability,lut_bits_per_source\n";
  for (const ScalingRow& row : rows) {
    out << SchemeName(row.scheme) << ',' << row.n << ',';
    if (row.k) out << *row.k;
    out << ',' << row.routing_bits << ',' << row.capability.str() << ','
        << row.lut_bits_per_source << '\n';
  }
}

}  // namespace hbsnoc
