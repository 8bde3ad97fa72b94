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

// Encode, decode and enumeration throughput. The range argument is log2 N
// for the encoders; trees use k = 4 where N allows it, else k = 2.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hbsnoc/address.h"
#include "hbsnoc/scaling.h"

namespace hbsnoc {
namespace {

TreeConfig TreeFor(int log2n) {
  return log2n % 2 == 0 ? TreeConfig(4, log2n / 2) : TreeConfig(2, log2n);
}

// Sets with 1..N/8 members, fixed seed.
std::vector<DestinationSet> RandomSets(const TreeConfig& cfg, int count) {
  std::mt19937_64 rng(1);
  const CoreIndex n = cfg.core_count();
  std::uniform_int_distribution<CoreIndex> size_dist(1, std::max(1u, n / 8));
  std::uniform_int_distribution<CoreIndex> core_dist(0, n - 1);
  std::vector<DestinationSet> sets;
  for (int i = 0; i < count; ++i) {
    std::vector<bool> taken(n, false);
    std::vector<CoreIndex> members;
    for (CoreIndex j = size_dist(rng); j > 0; --j) {
      const CoreIndex c = core_dist(rng);
      if (!taken[c]) {
        taken[c] = true;
        members.push_back(c);
      }
    }
    sets.push_back(DestinationSet::FromMembers(std::move(members), n));
  }
  return sets;
}

void BM_Encode(benchmark::State& state, Scheme scheme) {
  const TreeConfig cfg = TreeFor(static_cast<int>(state.range(0)));
  const std::vector<DestinationSet> sets = RandomSets(cfg, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Encode(scheme, sets[i++ % sets.size()], cfg));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_Encode, fbs, Scheme::kFbs)->DenseRange(4, 12, 4);
BENCHMARK_CAPTURE(BM_Encode, symbol, Scheme::kSymbol)->DenseRange(4, 12, 4);
BENCHMARK_CAPTURE(BM_Encode, hbs, Scheme::kHbs)->DenseRange(4, 12, 4);
BENCHMARK_CAPTURE(BM_Encode, unicast, Scheme::kUnicast)->DenseRange(4, 12, 4);

void BM_CoveredSet(benchmark::State& state, Scheme scheme) {
  const TreeConfig cfg = TreeFor(static_cast<int>(state.range(0)));
  std::vector<MulticastAddress> addrs;
  for (const DestinationSet& d : RandomSets(cfg, 256)) {
    addrs.push_back(Encode(scheme, d, cfg));
  }
  std::size_t i = 0;
  std::int64_t cores = 0;
  for (auto _ : state) {
    const DestinationSet cover = CoveredSet(addrs[i++ % addrs.size()], cfg);
    cores += static_cast<std::int64_t>(cover.size());
    benchmark::DoNotOptimize(cover);
  }
  state.SetItemsProcessed(cores);
}
BENCHMARK_CAPTURE(BM_CoveredSet, fbs, Scheme::kFbs)->DenseRange(4, 12, 4);
BENCHMARK_CAPTURE(BM_CoveredSet, symbol, Scheme::kSymbol)->DenseRange(4, 12, 4);
BENCHMARK_CAPTURE(BM_CoveredSet, hbs, Scheme::kHbs)->DenseRange(4, 12, 4);

void BM_EnumerateHbs(benchmark::State& state) {
  const TreeConfig cfg(static_cast<int>(state.range(0)),
                       static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(EnumerateCapability(Scheme::kHbs, cfg));
  }
}
BENCHMARK(BM_EnumerateHbs)
    ->Args({4, 2})
    ->Args({2, 8})
    ->Args({4, 4})
    ->Args({8, 2})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace hbsnoc

BENCHMARK_MAIN();
