// Copyright 2026 The vqcbench developers
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

#ifndef VQCBENCH_CONFIG_HPP_
#define VQCBENCH_CONFIG_HPP_

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqcbench/ansatz.hpp"
#include "vqcbench/featuremaps.hpp"
#include "vqcbench/models.hpp"
#include "vqcbench/optim.hpp"

namespace vqcbench {

// Raised for malformed configuration (unknown key, bad value); the CLI maps
// it to the usage-error exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised for missing or unreadable data files; the CLI maps it to the
// data-error exit code.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One experiment, fully resolved: dataset, model, circuits, optimizer, seeds.
struct ExperimentConfig {
  std::string dataset = "european";  // european | banksim
  int qubits = 7;
  std::uint64_t seed = 12345;
  std::vector<std::uint64_t> seeds;  // multi-seed medians; empty -> {seed}
  std::string data_dir = "data";
  std::string out_dir = "out";

  Architecture architecture = Architecture::VQC;
  int shots = 1024;        // SQNN prediction shots; 0 = exact
  int train_shots = 0;     // shot noise during training is opt-in
  Readout readout = Readout::Parity;

  FeatureMapKind map_kind = FeatureMapKind::Z;
  int map_reps = 1;
  std::vector<std::string> paulis{"Z", "Y", "ZZ"};
  Entanglement map_entanglement = Entanglement::Full;

  AnsatzKind ansatz_kind = AnsatzKind::RealAmplitudes;
  int ansatz_reps = 1;
  Entanglement ansatz_entanglement = Entanglement::Linear;
  long long ansatz_seed = -1;  // -1: derive from the run seed

  OptimizerConfig optimizer;  // seed field is filled per run

  std::vector<std::string> grid_datasets{"banksim", "european"};
  std::vector<std::string> grid_architectures{"vqc", "sqnn", "eqnn"};
  std::vector<std::string> grid_feature_maps{"z", "zz", "pauli"};
  std::vector<std::string> grid_ansatze{"real_amplitudes", "efficient_su2",
                                        "two_local", "pauli_two_design"};

  std::vector<std::uint64_t> resolved_seeds() const {
    return seeds.empty() ? std::vector<std::uint64_t>{seed} : seeds;
  }
};

inline Architecture architecture_from_name(const std::string& name) {
  if (name == "vqc") return Architecture::VQC;
  if (name == "sqnn") return Architecture::SQNN;
  if (name == "eqnn") return Architecture::EQNN;
  throw ConfigError("unknown architecture '" + name + "'");
}

inline FeatureMapKind feature_map_kind_from_name(const std::string& name) {
  if (name == "z") return FeatureMapKind::Z;
  if (name == "zz") return FeatureMapKind::ZZ;
  if (name == "pauli") return FeatureMapKind::Pauli;
  throw ConfigError("unknown feature map '" + name + "'");
}

inline AnsatzKind ansatz_kind_from_name(const std::string& name) {
  if (name == "real_amplitudes") return AnsatzKind::RealAmplitudes;
  if (name == "efficient_su2") return AnsatzKind::EfficientSU2;
  if (name == "two_local") return AnsatzKind::TwoLocal;
  if (name == "pauli_two_design") return AnsatzKind::PauliTwoDesign;
  throw ConfigError("unknown ansatz '" + name + "'");
}

inline Entanglement entanglement_from_name(const std::string& name) {
  if (name == "linear") return Entanglement::Linear;
  if (name == "full") return Entanglement::Full;
  if (name == "circular") return Entanglement::Circular;
  throw ConfigError("unknown entanglement '" + name + "'");
}

inline Readout readout_from_name(const std::string& name) {
  if (name == "parity") return Readout::Parity;
  if (name == "qubit0") return Readout::Qubit0;
  throw ConfigError("unknown readout '" + name + "'");
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return s.substr(a, b - a);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_integral(const std::string& key, const std::string& value) {
  T v{};
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end || value.empty()) {
    throw ConfigError("config key '" + key + "': cannot parse integer '" +
                      value + "'");
  }
  return v;
}

inline double parse_real(const std::string& key, const std::string& value) {
  double v = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end || value.empty()) {
    throw ConfigError("config key '" + key + "': cannot parse number '" +
                      value + "'");
  }
  return v;
}

}  // namespace detail

// Parses flat `key = value` text with `#` comments into a map.
inline std::map<std::string, std::string> parse_config_text(
    const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value, got '" + line + "'");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key");
    }
    out[key] = value;
  }
  return out;
}

// Applies parsed key/value pairs over the defaults; unknown keys are errors.
inline ExperimentConfig config_from_map(
    const std::map<std::string, std::string>& kv) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : kv) {
    if (key == "dataset") {
      if (value != "banksim" && value != "european") {
        throw ConfigError("unknown dataset '" + value + "'");
      }
      cfg.dataset = value;
    } else if (key == "qubits") {
      cfg.qubits = detail::parse_integral<int>(key, value);
    } else if (key == "seed") {
      cfg.seed = detail::parse_integral<std::uint64_t>(key, value);
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const std::string& s : detail::split_list(value)) {
        cfg.seeds.push_back(detail::parse_integral<std::uint64_t>(key, s));
      }
    } else if (key == "data_dir") {
      cfg.data_dir = value;
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else if (key == "model.architecture") {
      cfg.architecture = architecture_from_name(value);
    } else if (key == "model.shots") {
      cfg.shots = detail::parse_integral<int>(key, value);
    } else if (key == "model.train_shots") {
      cfg.train_shots = detail::parse_integral<int>(key, value);
    } else if (key == "model.readout") {
      cfg.readout = readout_from_name(value);
    } else if (key == "feature_map.kind") {
      cfg.map_kind = feature_map_kind_from_name(value);
    } else if (key == "feature_map.reps") {
      cfg.map_reps = detail::parse_integral<int>(key, value);
    } else if (key == "feature_map.paulis") {
      cfg.paulis = detail::split_list(value);
    } else if (key == "feature_map.entanglement") {
      cfg.map_entanglement = entanglement_from_name(value);
    } else if (key == "ansatz.kind") {
      cfg.ansatz_kind = ansatz_kind_from_name(value);
    } else if (key == "ansatz.reps") {
      cfg.ansatz_reps = detail::parse_integral<int>(key, value);
    } else if (key == "ansatz.entanglement") {
      cfg.ansatz_entanglement = entanglement_from_name(value);
    } else if (key == "ansatz.seed") {
      cfg.ansatz_seed = detail::parse_integral<long long>(key, value);
    } else if (key == "optimizer.max_evals") {
      cfg.optimizer.max_evals = detail::parse_integral<int>(key, value);
    } else if (key == "optimizer.rho_begin") {
      cfg.optimizer.rho_begin = detail::parse_real(key, value);
    } else if (key == "optimizer.rho_end") {
      cfg.optimizer.rho_end = detail::parse_real(key, value);
    } else if (key == "grid.datasets") {
      cfg.grid_datasets = detail::split_list(value);
    } else if (key == "grid.architectures") {
      cfg.grid_architectures = detail::split_list(value);
    } else if (key == "grid.feature_maps") {
      cfg.grid_feature_maps = detail::split_list(value);
    } else if (key == "grid.ansatze") {
      cfg.grid_ansatze = detail::split_list(value);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (cfg.qubits < 1) throw ConfigError("qubits must be >= 1");
  if (cfg.shots < 0 || cfg.train_shots < 0) {
    throw ConfigError("shot counts must be >= 0");
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_map(parse_config_text(ss.str()));
}

// Serializes the resolved configuration back to flat key=value text (used to
// echo the effective settings into run records).
inline std::map<std::string, std::string> config_to_map(
    const ExperimentConfig& cfg) {
  const auto join = [](const std::vector<std::string>& items) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) s.push_back(',');
      s += items[i];
    }
    return s;
  };
  std::map<std::string, std::string> kv;
  kv["dataset"] = cfg.dataset;
  kv["qubits"] = std::to_string(cfg.qubits);
  kv["seed"] = std::to_string(cfg.seed);
  std::string seeds;
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    if (i) seeds.push_back(',');
    seeds += std::to_string(cfg.seeds[i]);
  }
  kv["seeds"] = seeds;
  kv["data_dir"] = cfg.data_dir;
  kv["out_dir"] = cfg.out_dir;
  kv["model.architecture"] = architecture_name(cfg.architecture);
  kv["model.shots"] = std::to_string(cfg.shots);
  kv["model.train_shots"] = std::to_string(cfg.train_shots);
  kv["model.readout"] = readout_name(cfg.readout);
  kv["feature_map.kind"] = feature_map_name(cfg.map_kind);
  kv["feature_map.reps"] = std::to_string(cfg.map_reps);
  kv["feature_map.paulis"] = join(cfg.paulis);
  kv["feature_map.entanglement"] = entanglement_name(cfg.map_entanglement);
  kv["ansatz.kind"] = ansatz_name(cfg.ansatz_kind);
  kv["ansatz.reps"] = std::to_string(cfg.ansatz_reps);
  kv["ansatz.entanglement"] = entanglement_name(cfg.ansatz_entanglement);
  kv["ansatz.seed"] = std::to_string(cfg.ansatz_seed);
  kv["optimizer.max_evals"] = std::to_string(cfg.optimizer.max_evals);
  std::string buf;
  vqcbench::detail::format_double(buf, cfg.optimizer.rho_begin);
  kv["optimizer.rho_begin"] = buf;
  buf.clear();
  vqcbench::detail::format_double(buf, cfg.optimizer.rho_end);
  kv["optimizer.rho_end"] = buf;
  kv["grid.datasets"] = join(cfg.grid_datasets);
  kv["grid.architectures"] = join(cfg.grid_architectures);
  kv["grid.feature_maps"] = join(cfg.grid_feature_maps);
  kv["grid.ansatze"] = join(cfg.grid_ansatze);
  return kv;
}

}  // namespace vqcbench

#endif  // VQCBENCH_CONFIG_HPP_
