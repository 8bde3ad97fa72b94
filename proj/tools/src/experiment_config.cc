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

#include "hbsnoc/tools/experiment_config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hbsnoc/tree_config.h"

namespace hbsnoc::tools {
namespace {

namespace pt = boost::property_tree;

std::string JoinLines(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& line : lines) {
    if (!out.empty()) out += '\n';
    out += line;
  }
  return out;
}

std::vector<std::string> SplitList(std::string_view text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    items.push_back(boost::algorithm::trim_copy(
        std::string(text.substr(start, comma - start))));
    start = comma + 1;
  }
  return items;
}

template <typename T>
std::optional<T> ParseNumber(std::string_view text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return value;
}

std::optional<bool> ParseBool(std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") {
    return true;
  }
  if (text == "false" || text == "0" || text == "no" || text == "off") {
    return false;
  }
  return std::nullopt;
}

// Reads typed values out of one INI tree and records every problem.
class Reader {
 public:
  explicit Reader(const pt::ptree& root) : root_(root) {}

  // Flags sections and keys outside `schema`.
  void CheckKeys(const std::map<std::string, std::set<std::string>>& schema) {
    for (const auto& [name, node] : root_) {
      if (node.empty()) {
        if (!schema.at("").contains(name)) Problem(name, "unknown key");
        continue;
      }
      auto section = schema.find(name);
      if (section == schema.end() || name.empty()) {
        Problem(name, "unknown section");
        continue;
      }
      for (const auto& [key, leaf] : node) {
        if (!section->second.contains(key)) {
          Problem(name + "." + key, "unknown key");
        }
      }
    }
  }

  std::optional<std::string> Text(const std::string& path) const {
    auto value = root_.get_optional<std::string>(pt::ptree::path_type(path, '.'));
    if (!value) return std::nullopt;
    return boost::algorithm::trim_copy(*value);
  }

  template <typename T>
  void Number(const std::string& path, T& out) {
    auto text = Text(path);
    if (!text) return;
    if (auto value = ParseNumber<T>(*text)) {
      out = *value;
    } else {
      Problem(path, "expected a number, got \"" + *text + "\"");
    }
  }

  void Bool(const std::string& path, bool& out) {
    auto text = Text(path);
    if (!text) return;
    if (auto value = ParseBool(*text)) {
      out = *value;
    } else {
      Problem(path, "expected true or false, got \"" + *text + "\"");
    }
  }

  void Problem(const std::string& path, const std::string& message) {
    problems_.push_back(path + ": " + message);
  }

  std::vector<std::string>& problems() { return problems_; }

 private:
  const pt::ptree& root_;
  std::vector<std::string> problems_;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::invalid_argument(JoinLines(problems)),
      problems_(std::move(problems)) {}

EnergyModel ExperimentConfig::energy() const {
  EnergyModel model = EnergyModel::Default(levels);
  if (!link_energy_per_bit.empty()) {
    model.link_energy_per_bit = link_energy_per_bit;
  }
  model.filter_energy_per_lookup = filter_energy_per_lookup;
  return model;
}

void ExperimentConfig::Validate() const {
  std::vector<std::string> problems;
  auto problem = [&](const std::string& path, const std::string& message) {
    problems.push_back(path + ": " + message);
  };

  std::optional<TreeConfig> cfg;
  if (fan_out < 2 || fan_out > kMaxFanOut) {
    problem("tree.fan_out",
            "must be in [2, " + std::to_string(kMaxFanOut) + "]");
  }
  if (levels < 1) problem("tree.levels", "must be at least 1");
  if (fan_out >= 2 && fan_out <= kMaxFanOut && levels >= 1) {
    try {
      cfg.emplace(fan_out, levels);
    } catch (const std::invalid_argument& e) {
      problem("tree", e.what());
    }
  }

  if (schemes.empty()) problem("schemes", "at least one scheme is required");
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (std::find(schemes.begin(), schemes.begin() + static_cast<long>(i),
                  schemes[i]) != schemes.begin() + static_cast<long>(i)) {
      problem("schemes",
              "duplicate scheme " + std::string(SchemeName(schemes[i])));
    }
  }
  if (cfg && !cfg->core_count_is_power_of_two() &&
      std::find(schemes.begin(), schemes.end(), Scheme::kSymbol) !=
          schemes.end()) {
    problem("schemes",
            "symbol requires the core count N = fan_out^levels to be a power "
            "of two, got N = " +
                std::to_string(cfg->core_count()));
  }

  bool network_ok = true;
  if (network.layers.empty()) {
    problem("network.layers", "at least one layer is required");
    network_ok = false;
  }
  for (std::size_t i = 0; i < network.layers.size(); ++i) {
    if (network.layers[i].size == 0) {
      problem("network.layers", "layer " + std::to_string(i) + " is empty");
      network_ok = false;
    }
  }
  if (!(network.connection_density > 0.0 &&
        network.connection_density <= 1.0)) {
    problem("network.density", "must be in (0, 1]");
  }
  const std::uint64_t neurons = network_ok ? network.neuron_count() : 0;

  if (tag_bits < 0 || tag_bits > 32) {
    problem("tag_bits", "must be in [1, 32], or 0 for the default");
  } else if (tag_bits > 0 && network_ok &&
             neurons > (std::uint64_t{1} << tag_bits)) {
    problem("tag_bits", std::to_string(tag_bits) +
                            " bits cannot hold neuron ids up to " +
                            std::to_string(neurons - 1));
  }

  if (!link_energy_per_bit.empty()) {
    if (link_energy_per_bit.size() != static_cast<std::size_t>(levels)) {
      problem("energy.link", "expected one value per level (" +
                                 std::to_string(levels) + "), got " +
                                 std::to_string(link_energy_per_bit.size()));
    } else {
      try {
        energy().Validate(levels);
      } catch (const std::invalid_argument& e) {
        problem("energy.link", e.what());
      }
    }
  }
  if (!(filter_energy_per_lookup >= 0.0)) {
    problem("energy.filter_lookup", "must be nonnegative");
  }

  if (mapping_source == MappingSource::kFile) {
    if (mapping_file.empty()) {
      problem("mapping.file", "required when mapping.strategy = file");
    }
  } else {
    if (repetitions < 1) problem("mapping.repetitions", "must be at least 1");
    if (!(mapping.switch_probability >= 0.0 &&
          mapping.switch_probability <= 1.0)) {
      problem("mapping.switch_probability", "must be in [0, 1]");
    }
  }
  if (mapping.core_capacity < 1) {
    problem("mapping.capacity", "must be at least 1");
  } else if (cfg && network_ok &&
             std::uint64_t{mapping.core_capacity} * cfg->core_count() <
                 neurons) {
    problem("mapping.capacity",
            std::to_string(cfg->core_count()) + " cores x " +
                std::to_string(mapping.core_capacity) +
                " neurons cannot hold " + std::to_string(neurons) +
                " neurons");
  }

  if (trace_source == TraceSource::kFile) {
    if (trace_file.empty()) {
      problem("trace.file", "required when trace.source = file");
    }
  } else {
    if (trace_steps < 1) problem("trace.steps", "must be at least 1");
    if (!(trace_rate >= 0.0 && trace_rate <= 1.0)) {
      problem("trace.rate", "must be in [0, 1]");
    }
  }

  if (output_dir.empty()) problem("output.dir", "must not be empty");

  if (!problems.empty()) throw ConfigError(std::move(problems));
}

std::vector<Layer> ParseLayers(std::string_view text) {
  std::vector<Layer> layers;
  for (const std::string& item : SplitList(text)) {
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("layer \"" + item +
                                  "\" is not of the form kind:size");
    }
    const std::string kind = boost::algorithm::trim_copy(item.substr(0, colon));
    const auto size = ParseNumber<std::uint32_t>(
        boost::algorithm::trim_copy(item.substr(colon + 1)));
    if (!size) {
      throw std::invalid_argument("layer \"" + item + "\" has a bad size");
    }
    if (kind == "recurrent" || kind == "r") {
      layers.push_back({*size, LayerKind::kRecurrent});
    } else if (kind == "feedforward" || kind == "f") {
      layers.push_back({*size, LayerKind::kFeedforward});
    } else {
      throw std::invalid_argument("layer kind \"" + kind +
                                  "\" is not recurrent or feedforward");
    }
  }
  return layers;
}

std::string LayersToText(const std::vector<Layer>& layers) {
  std::string out;
  for (const Layer& layer : layers) {
    if (!out.empty()) out += ',';
    out += layer.kind == LayerKind::kRecurrent ? "recurrent:" : "feedforward:";
    out += std::to_string(layer.size);
  }
  return out;
}

ExperimentConfig ParseExperimentConfig(std::istream& in) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({"line " + std::to_string(e.line()) + ": " +
                       e.message()});
  }

  Reader r(root);
  r.CheckKeys({
      {"", {"schemes", "tag_bits", "turnaround"}},
      {"tree", {"fan_out", "levels"}},
      {"energy", {"link", "filter_lookup"}},
      {"network",
       {"layers", "density", "literal_fc", "require_fanout", "seed"}},
      {"mapping",
       {"strategy", "file", "capacity", "switch_probability", "repetitions",
        "seed"}},
      {"trace", {"source", "file", "steps", "rate", "seed"}},
      {"output", {"dir"}},
  });

  ExperimentConfig c;
  if (auto text = r.Text("schemes")) {
    c.schemes.clear();
    for (const std::string& name : SplitList(*text)) {
      try {
        c.schemes.push_back(ParseScheme(name));
      } catch (const std::invalid_argument&) {
        r.Problem("schemes", "unknown scheme \"" + name + "\"");
      }
    }
  }
  r.Number("tag_bits", c.tag_bits);
  if (auto text = r.Text("turnaround")) {
    if (*text == "root") {
      c.turnaround = Turnaround::kRoot;
    } else if (*text == "lca") {
      c.turnaround = Turnaround::kLowestCommonAncestor;
    } else {
      r.Problem("turnaround", "expected root or lca, got \"" + *text + "\"");
    }
  }

  r.Number("tree.fan_out", c.fan_out);
  r.Number("tree.levels", c.levels);

  if (auto text = r.Text("energy.link")) {
    for (const std::string& item : SplitList(*text)) {
      if (auto value = ParseNumber<double>(item)) {
        c.link_energy_per_bit.push_back(*value);
      } else {
        r.Problem("energy.link", "expected a number, got \"" + item + "\"");
      }
    }
  }
  r.Number("energy.filter_lookup", c.filter_energy_per_lookup);

  if (auto text = r.Text("network.layers")) {
    try {
      c.network.layers = ParseLayers(*text);
    } catch (const std::invalid_argument& e) {
      r.Problem("network.layers", e.what());
    }
  }
  r.Number("network.density", c.network.connection_density);
  r.Bool("network.literal_fc", c.network.literal_fc);
  r.Bool("network.require_fanout", c.network.require_fanout);
  r.Number("network.seed", c.network_seed);

  if (auto text = r.Text("mapping.strategy")) {
    if (*text == "random_switch") {
      c.mapping.strategy = MappingStrategy::kRandomSwitch;
    } else if (*text == "sequential") {
      c.mapping.strategy = MappingStrategy::kSequential;
    } else if (*text == "file") {
      c.mapping_source = MappingSource::kFile;
    } else {
      r.Problem("mapping.strategy",
                "expected random_switch, sequential or file, got \"" + *text +
                    "\"");
    }
  }
  if (auto text = r.Text("mapping.file")) c.mapping_file = *text;
  r.Number("mapping.capacity", c.mapping.core_capacity);
  r.Number("mapping.switch_probability", c.mapping.switch_probability);
  r.Number("mapping.repetitions", c.repetitions);
  r.Number("mapping.seed", c.mapping.seed);
  if (c.mapping_source == MappingSource::kFile) c.repetitions = 1;

  if (auto text = r.Text("trace.source")) {
    if (*text == "synth") {
      c.trace_source = TraceSource::kSynth;
    } else if (*text == "file") {
      c.trace_source = TraceSource::kFile;
    } else {
      r.Problem("trace.source", "expected synth or file, got \"" + *text + "\"");
    }
  }
  if (auto text = r.Text("trace.file")) c.trace_file = *text;
  r.Number("trace.steps", c.trace_steps);
  r.Number("trace.rate", c.trace_rate);
  r.Number("trace.seed", c.trace_seed);

  if (auto text = r.Text("output.dir")) c.output_dir = *text;

  std::vector<std::string> problems = std::move(r.problems());
  try {
    c.Validate();
  } catch (const ConfigError& e) {
    problems.insert(problems.end(), e.problems().begin(), e.problems().end());
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config file " + path.string());
  }
  ExperimentConfig c = ParseExperimentConfig(in);
  const std::filesystem::path base = path.parent_path();
  if (!c.mapping_file.empty() && c.mapping_file.is_relative()) {
    c.mapping_file = base / c.mapping_file;
  }
  if (!c.trace_file.empty() && c.trace_file.is_relative()) {
    c.trace_file = base / c.trace_file;
  }
  return c;
}

}  // namespace hbsnoc::tools
