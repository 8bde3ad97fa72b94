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

#include "hbsnoc/address.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <stdexcept>
#include <string>

namespace hbsnoc {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t LevelMaskLimit(int fan_out) {
  return fan_out == 64 ? ~std::uint64_t{0}
                       : (std::uint64_t{1} << fan_out) - 1;
}

void CheckMembersInTree(const DestinationSet& dests, const TreeConfig& cfg) {
  if (dests.max() >= cfg.core_count()) {
    throw std::invalid_argument("destination core " +
                                std::to_string(dests.max()) +
                                " out of range for " +
                                std::to_string(cfg.core_count()) + " cores");
  }
}

int SymbolCount(const TreeConfig& cfg) {
  if (!cfg.core_count_is_power_of_two()) {
    throw std::invalid_argument(
        "symbol encoding requires a power-of-two core count, got N=" +
        std::to_string(cfg.core_count()));
  }
  return FloorLog2(cfg.core_count());
}

}  // namespace

std::string_view SchemeName(Scheme scheme) {
  switch (scheme) {
    case Scheme::kFbs:
      return "fbs";
    case Scheme::kSymbol:
      return "symbol";
    case Scheme::kHbs:
      return "hbs";
    case Scheme::kUnicast:
      return "unicast";
  }
  return "unknown";
}

Scheme ParseScheme(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (Scheme s : kAllSchemes) {
    if (SchemeName(s) == lower) return s;
  }
  throw std::invalid_argument("unknown scheme '" + std::string(name) +
                              "' (expected fbs, symbol, hbs or unicast)");
}

Scheme SchemeOf(const MulticastAddress& addr) {
  return std::visit(
      Overloaded{[](const FbsAddress&) { return Scheme::kFbs; },
                 [](const SymbolAddress&) { return Scheme::kSymbol; },
                 [](const HbsAddress&) { return Scheme::kHbs; },
                 [](const UnicastAddress&) { return Scheme::kUnicast; }},
      addr);
}

FbsAddress EncodeFbs(const DestinationSet& dests, const TreeConfig& cfg) {
  CheckMembersInTree(dests, cfg);
  FbsAddress out{boost::dynamic_bitset<>(cfg.core_count())};
  for (CoreIndex c : dests) out.mask.set(c);
  return out;
}

SymbolAddress EncodeSymbol(const DestinationSet& dests, const TreeConfig& cfg) {
  const int bits = SymbolCount(cfg);
  CheckMembersInTree(dests, cfg);
  CoreIndex all_and = ~CoreIndex{0};
  CoreIndex all_or = 0;
  for (CoreIndex c : dests) {
    all_and &= c;
    all_or |= c;
  }
  SymbolAddress out;
  out.symbols.reserve(static_cast<std::size_t>(bits));
  for (int i = 0; i < bits; ++i) {
    const CoreIndex bit = CoreIndex{1} << (bits - 1 - i);
    if (all_and & bit) {
      out.symbols.push_back(Symbol::kOne);
    } else if (all_or & bit) {
      out.symbols.push_back(Symbol::kStar);
    } else {
      out.symbols.push_back(Symbol::kZero);
    }
  }
  return out;
}

HbsAddress EncodeHbs(const DestinationSet& dests, const TreeConfig& cfg) {
  CheckMembersInTree(dests, cfg);
  HbsAddress out;
  out.masks.assign(static_cast<std::size_t>(cfg.levels()), 0);
  for (CoreIndex c : dests) {
    for (int level = 0; level < cfg.levels(); ++level) {
      out.masks[static_cast<std::size_t>(level)] |= std::uint64_t{1}
                                                    << DigitAt(c, level, cfg);
    }
  }
  return out;
}

UnicastAddress EncodeUnicast(const DestinationSet& dests) {
  return UnicastAddress{dests.members()};
}

MulticastAddress Encode(Scheme scheme, const DestinationSet& dests,
                        const TreeConfig& cfg) {
  switch (scheme) {
    case Scheme::kFbs:
      return EncodeFbs(dests, cfg);
    case Scheme::kSymbol:
      return EncodeSymbol(dests, cfg);
    case Scheme::kHbs:
      return EncodeHbs(dests, cfg);
    case Scheme::kUnicast:
      CheckMembersInTree(dests, cfg);
      return EncodeUnicast(dests);
  }
  throw std::invalid_argument("unknown scheme");
}

void ValidateAddress(const MulticastAddress& addr, const TreeConfig& cfg) {
  std::visit(
      Overloaded{
          [&](const FbsAddress& a) {
            if (a.mask.size() != cfg.core_count()) {
              throw std::invalid_argument(
                  "FBS mask has " + std::to_string(a.mask.size()) +
                  " bits, expected " + std::to_string(cfg.core_count()));
            }
            if (a.mask.none()) {
              throw std::invalid_argument("FBS mask must be nonzero");
            }
          },
          [&](const SymbolAddress& a) {
            const int bits = SymbolCount(cfg);
            if (a.symbols.size() != static_cast<std::size_t>(bits)) {
              throw std::invalid_argument(
                  "symbol string has " + std::to_string(a.symbols.size()) +
                  " symbols, expected " + std::to_string(bits));
            }
            for (Symbol s : a.symbols) {
              if (s != Symbol::kZero && s != Symbol::kOne &&
                  s != Symbol::kStar) {
                throw std::invalid_argument("invalid symbol value");
              }
            }
          },
          [&](const HbsAddress& a) {
            if (a.masks.size() != static_cast<std::size_t>(cfg.levels())) {
              throw std::invalid_argument(
                  "HBS address has " + std::to_string(a.masks.size()) +
                  " level masks, expected " + std::to_string(cfg.levels()));
            }
            const std::uint64_t limit = LevelMaskLimit(cfg.fan_out());
            for (std::size_t i = 0; i < a.masks.size(); ++i) {
              if (a.masks[i] == 0) {
                throw std::invalid_argument("HBS level " + std::to_string(i) +
                                            " mask is zero");
              }
              if ((a.masks[i] & ~limit) != 0) {
                throw std::invalid_argument(
                    "HBS level " + std::to_string(i) + " mask exceeds " +
                    std::to_string(cfg.fan_out()) + " bits");
              }
            }
          },
          [&](const UnicastAddress& a) {
            if (a.targets.empty()) {
              throw std::invalid_argument("unicast list must not be empty");
            }
            for (std::size_t i = 0; i < a.targets.size(); ++i) {
              if (a.targets[i] >= cfg.core_count()) {
                throw std::invalid_argument(
                    "unicast target " + std::to_string(a.targets[i]) +
                    " out of range");
              }
              if (i > 0 && a.targets[i] <= a.targets[i - 1]) {
                throw std::invalid_argument(
                    "unicast targets must be strictly ascending");
              }
            }
          }},
      addr);
}

DestinationSet CoveredSet(const MulticastAddress& addr, const TreeConfig& cfg) {
  ValidateAddress(addr, cfg);
  std::vector<CoreIndex> out;
  std::visit(
      Overloaded{
          [&](const FbsAddress& a) {
            out.reserve(a.mask.count());
            for (auto i = a.mask.find_first(); i != a.mask.npos;
                 i = a.mask.find_next(i)) {
              out.push_back(static_cast<CoreIndex>(i));
            }
          },
          [&](const SymbolAddress& a) {
            // Fixed bits form the base index; star positions are filled by a
            // counter whose bits map onto them in significance order, which
            // yields ascending indices.
            const int bits = static_cast<int>(a.symbols.size());
            CoreIndex base = 0;
            std::vector<CoreIndex> star_bits;
            for (int i = 0; i < bits; ++i) {
              const CoreIndex bit = CoreIndex{1} << (bits - 1 - i);
              if (a.symbols[static_cast<std::size_t>(i)] == Symbol::kOne) {
                base |= bit;
              } else if (a.symbols[static_cast<std::size_t>(i)] ==
                         Symbol::kStar) {
                star_bits.push_back(bit);
              }
            }
            std::reverse(star_bits.begin(), star_bits.end());
            const std::uint64_t combos = std::uint64_t{1} << star_bits.size();
            out.reserve(combos);
            for (std::uint64_t m = 0; m < combos; ++m) {
              CoreIndex index = base;
              for (std::size_t j = 0; j < star_bits.size(); ++j) {
                if ((m >> j) & 1) index |= star_bits[j];
              }
              out.push_back(index);
            }
          },
          [&](const HbsAddress& a) {
            // Odometer over root-first digit choices; lexicographic order is
            // ascending index order.
            const std::size_t levels = a.masks.size();
            std::array<std::array<CoreIndex, kMaxFanOut>, 21> offsets;
            std::array<std::size_t, 21> count{};
            std::size_t total = 1;
            for (std::size_t l = 0; l < levels; ++l) {
              const CoreIndex span = cfg.SubtreeSpan(static_cast<int>(l) + 1);
              for (std::uint64_t m = a.masks[l]; m != 0; m &= m - 1) {
                offsets[l][count[l]++] =
                    static_cast<CoreIndex>(std::countr_zero(m)) * span;
              }
              total *= count[l];
            }
            // Deep levels are expanded once into a tail block; the odometer
            // runs over the remaining top levels and copies the block.
            std::size_t top = levels;
            std::vector<CoreIndex> tail{0};
            while (top > 0 && tail.size() < 64) {
              --top;
              std::vector<CoreIndex> next;
              next.reserve(tail.size() * count[top]);
              for (std::size_t j = 0; j < count[top]; ++j) {
                for (CoreIndex t : tail) next.push_back(offsets[top][j] + t);
              }
              tail = std::move(next);
            }
            out.resize(total);
            std::array<std::size_t, 21> pos{};
            std::array<CoreIndex, 22> partial{};
            for (std::size_t l = 0; l < top; ++l) {
              partial[l + 1] = partial[l] + offsets[l][0];
            }
            CoreIndex* dst = out.data();
            CoreIndex* const end = dst + total;
            const CoreIndex* const tail_begin = tail.data();
            const std::size_t tail_size = tail.size();
            while (true) {
              const CoreIndex base = partial[top];
              for (std::size_t j = 0; j < tail_size; ++j) {
                dst[j] = base + tail_begin[j];
              }
              dst += tail_size;
              if (dst == end) break;
              std::size_t l = top - 1;
              while (pos[l] + 1 == count[l]) {
                pos[l] = 0;
                --l;
              }
              ++pos[l];
              for (std::size_t j = l; j < top; ++j) {
                partial[j + 1] = partial[j] + offsets[j][pos[j]];
              }
            }
          },
          [&](const UnicastAddress& a) { out = a.targets; }},
      addr);
  return DestinationSet::FromSortedUnique(std::move(out));
}

std::uint64_t CoverSize(const MulticastAddress& addr, const TreeConfig& cfg) {
  ValidateAddress(addr, cfg);
  return std::visit(
      Overloaded{[](const FbsAddress& a) -> std::uint64_t {
                   return a.mask.count();
                 },
                 [](const SymbolAddress& a) -> std::uint64_t {
                   return std::uint64_t{1}
                          << std::count(a.symbols.begin(), a.symbols.end(),
                                        Symbol::kStar);
                 },
                 [](const HbsAddress& a) -> std::uint64_t {
                   std::uint64_t size = 1;
                   for (std::uint64_t m : a.masks) {
                     size *= static_cast<std::uint64_t>(std::popcount(m));
                   }
                   return size;
                 },
                 [](const UnicastAddress& a) -> std::uint64_t {
                   return a.targets.size();
                 }},
      addr);
}

bool Covers(const MulticastAddress& addr, CoreIndex core,
            const TreeConfig& cfg) {
  if (core >= cfg.core_count()) return false;
  return std::visit(
      Overloaded{
          [&](const FbsAddress& a) { return a.mask.test(core); },
          [&](const SymbolAddress& a) {
            const int bits = static_cast<int>(a.symbols.size());
            for (int i = 0; i < bits; ++i) {
              const bool bit = (core >> (bits - 1 - i)) & 1;
              const Symbol s = a.symbols[static_cast<std::size_t>(i)];
              if ((s == Symbol::kZero && bit) || (s == Symbol::kOne && !bit)) {
                return false;
              }
            }
            return true;
          },
          [&](const HbsAddress& a) {
            for (int level = 0; level < cfg.levels(); ++level) {
              if (((a.masks[static_cast<std::size_t>(level)] >>
                    DigitAt(core, level, cfg)) &
                   1) == 0) {
                return false;
              }
            }
            return true;
          },
          [&](const UnicastAddress& a) {
            return std::binary_search(a.targets.begin(), a.targets.end(),
                                      core);
          }},
      addr);
}

std::uint64_t Overcoverage(const MulticastAddress& addr,
                           const DestinationSet& dests, const TreeConfig& cfg) {
  const std::uint64_t size = CoverSize(addr, cfg);
  for (CoreIndex c : dests) {
    if (!Covers(addr, c, cfg)) {
      throw std::logic_error("address does not cover destination core " +
                             std::to_string(c));
    }
  }
  return size - dests.size();
}

HbsAddress RotateHbs(const HbsAddress& addr) {
  HbsAddress out = addr;
  if (!out.masks.empty()) {
    std::rotate(out.masks.begin(), out.masks.begin() + 1, out.masks.end());
  }
  return out;
}

SymbolAddress RotateSymbols(const SymbolAddress& addr, int count) {
  SymbolAddress out = addr;
  if (!out.symbols.empty()) {
    const auto n = static_cast<int>(out.symbols.size());
    const int shift = ((count % n) + n) % n;
    std::rotate(out.symbols.begin(), out.symbols.begin() + shift,
                out.symbols.end());
  }
  return out;
}

RoutingBitWidth RoutingBitWidthOf(Scheme scheme, const TreeConfig& cfg) {
  switch (scheme) {
    case Scheme::kFbs:
      return {scheme, static_cast<int>(cfg.core_count())};
    case Scheme::kSymbol:
      return {scheme, 2 * SymbolCount(cfg)};
    case Scheme::kHbs:
      return {scheme, cfg.fan_out() * cfg.levels()};
    case Scheme::kUnicast:
      return {scheme, CeilLog2(cfg.core_count())};
  }
  throw std::invalid_argument("unknown scheme");
}

std::string ToText(const MulticastAddress& addr, const TreeConfig& cfg) {
  return std::visit(
      Overloaded{
          [](const FbsAddress& a) {
            std::string s;
            boost::to_string(a.mask, s);
            return s;
          },
          [](const SymbolAddress& a) {
            std::string s;
            for (Symbol sym : a.symbols) {
              s += sym == Symbol::kZero ? '0' : sym == Symbol::kOne ? '1' : '*';
            }
            return s;
          },
          [&cfg](const HbsAddress& a) {
            std::string s;
            for (std::size_t i = 0; i < a.masks.size(); ++i) {
              if (i > 0) s += '/';
              for (int bit = cfg.fan_out() - 1; bit >= 0; --bit) {
                s += ((a.masks[i] >> bit) & 1) ? '1' : '0';
              }
            }
            return s;
          },
          [](const UnicastAddress& a) {
            std::string s;
            for (std::size_t i = 0; i < a.targets.size(); ++i) {
              if (i > 0) s += ',';
              s += std::to_string(a.targets[i]);
            }
            return s;
          }},
      addr);
}

MulticastAddress ParseAddress(Scheme scheme, std::string_view text,
                              const TreeConfig& cfg) {
  MulticastAddress out;
  switch (scheme) {
    case Scheme::kFbs: {
      if (text.find_first_not_of("01") != std::string_view::npos) {
        throw std::invalid_argument("FBS address must be a binary string");
      }
      if (text.size() != cfg.core_count()) {
        throw std::invalid_argument(
            "FBS address has " + std::to_string(text.size()) +
            " bits, expected " + std::to_string(cfg.core_count()));
      }
      out = FbsAddress{boost::dynamic_bitset<>(std::string(text))};
      break;
    }
    case Scheme::kSymbol: {
      SymbolAddress a;
      for (char c : text) {
        switch (c) {
          case '0':
            a.symbols.push_back(Symbol::kZero);
            break;
          case '1':
            a.symbols.push_back(Symbol::kOne);
            break;
          case '*':
            a.symbols.push_back(Symbol::kStar);
            break;
          default:
            throw std::invalid_argument(
                "symbol address may only contain '0', '1' and '*'");
        }
      }
      out = std::move(a);
      break;
    }
    case Scheme::kHbs: {
      HbsAddress a;
      std::size_t pos = 0;
      while (true) {
        const std::size_t slash = text.find('/', pos);
        const std::string_view field = text.substr(
            pos, slash == std::string_view::npos ? std::string_view::npos
                                                 : slash - pos);
        if (field.size() != static_cast<std::size_t>(cfg.fan_out()) ||
            field.find_first_not_of("01") != std::string_view::npos) {
          throw std::invalid_argument("HBS level mask '" + std::string(field) +
                                      "' must be " +
                                      std::to_string(cfg.fan_out()) +
                                      " binary digits");
        }
        std::uint64_t mask = 0;
        for (char c : field) mask = (mask << 1) | (c == '1' ? 1u : 0u);
        a.masks.push_back(mask);
        if (slash == std::string_view::npos) break;
        pos = slash + 1;
      }
      out = std::move(a);
      break;
    }
    case Scheme::kUnicast:
      out = UnicastAddress{ParseCoreList(text)};
      break;
  }
  ValidateAddress(out, cfg);
  return out;
}

}  // namespace hbsnoc
