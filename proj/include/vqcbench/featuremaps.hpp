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

#pragma once

// The three data-encoding circuits: Z, ZZ and general Pauli feature maps.
//
// All three share one skeleton per repetition: a Hadamard layer followed by
// Pauli-evolution terms exp(i * phi_S(x) * prod P). The data map phi_S is
// x_i for singleton subsets and prod (pi - x_j) for larger ones, so the
// physical rotation inside each gadget carries 2*phi_S.

#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqcbench/circuit.hpp"

namespace vqcbench {

enum class FeatureMapKind { Z, ZZ, Pauli };

inline const char* feature_map_name(FeatureMapKind kind) {
  switch (kind) {
    case FeatureMapKind::Z: return "z";
    case FeatureMapKind::ZZ: return "zz";
    case FeatureMapKind::Pauli: return "pauli";
  }
  return "?";
}

struct FeatureMapSpec {
  FeatureMapKind kind = FeatureMapKind::Z;
  int n_features = 0;
  int reps = 1;
  // Pauli kind only. Each label is 1 or 2 axes from {X,Y,Z}; 1-axis labels
  // are applied per qubit, 2-axis labels per entangled pair.
  std::vector<std::string> pauli_strings{"Z", "Y", "ZZ"};
  Entanglement entanglement = Entanglement::Full;
};

/// Data mapping function: x_i for a singleton subset {i}, otherwise
/// prod_{j in subset} (pi - x_j).
inline double data_map_phi(const std::vector<int>& subset,
                           std::span<const double> x) {
  if (subset.empty()) {
    throw std::invalid_argument("data_map_phi: empty subset");
  }
  for (int j : subset) {
    if (j < 0 || j >= static_cast<int>(x.size())) {
      throw std::invalid_argument("data_map_phi: index " + std::to_string(j) +
                                  " out of range");
    }
  }
  if (subset.size() == 1) return x[static_cast<std::size_t>(subset[0])];
  double product = 1.0;
  for (int j : subset) product *= M_PI - x[static_cast<std::size_t>(j)];
  return product;
}

/// Symbolic form of data_map_phi over the feature symbols x_0..x_{n-1}.
inline ParamExpr data_map_phi_expr(const std::vector<int>& subset) {
  if (subset.empty()) {
    throw std::invalid_argument("data_map_phi_expr: empty subset");
  }
  if (subset.size() == 1) return ParamExpr::symbol(subset[0]);
  std::vector<ParamExpr::Factor> factors;
  factors.reserve(subset.size());
  for (int j : subset) factors.push_back(ParamExpr::Factor{M_PI, -1.0, j});
  return ParamExpr::product(1.0, factors);
}

namespace detail {

inline void validate_map_spec(const FeatureMapSpec& spec, int min_features) {
  if (spec.n_features < min_features) {
    throw std::invalid_argument(
        std::string("feature map ") + feature_map_name(spec.kind) +
        " requires at least " + std::to_string(min_features) +
        " feature(s), got " + std::to_string(spec.n_features));
  }
  if (spec.n_features > kMaxQubits) {
    throw std::invalid_argument("feature map: n_features exceeds " +
                                std::to_string(kMaxQubits));
  }
  if (spec.reps < 1) {
    throw std::invalid_argument("feature map: reps must be >= 1");
  }
  if (spec.entanglement == Entanglement::Circular) {
    throw std::invalid_argument(
        "feature map: entanglement must be full or linear");
  }
}

inline ParamCircuit map_skeleton(const FeatureMapSpec& spec) {
  ParamCircuit circ(spec.n_features);
  for (int q = 0; q < spec.n_features; ++q) {
    circ.add_parameter("x" + std::to_string(q));
  }
  return circ;
}

inline void append_h_layer(ParamCircuit& circ) {
  for (int q = 0; q < circ.n_qubits(); ++q) {
    circ.append(GateOp::single(GateKind::H, q));
  }
}

}  // namespace detail

/// First-order Pauli-Z map: per rep, an H layer then one single-qubit
/// Z evolution per qubit with phi = x_q (rotation magnitude 2*x_q). Contains
/// no two-qubit gates.
inline ParamCircuit build_z_map(const FeatureMapSpec& spec) {
  if (spec.kind != FeatureMapKind::Z) {
    throw std::invalid_argument("build_z_map: spec kind is not Z");
  }
  detail::validate_map_spec(spec, 1);
  ParamCircuit circ = detail::map_skeleton(spec);
  for (int rep = 0; rep < spec.reps; ++rep) {
    detail::append_h_layer(circ);
    for (int q = 0; q < spec.n_features; ++q) {
      append_pauli_evolution(circ, {{q, 'Z'}}, data_map_phi_expr({q}));
    }
  }
  return circ;
}

/// Second-order Pauli-Z map: the Z map plus, per entangled pair (i, j), a
/// ZZ evolution with phi = (pi - x_i)(pi - x_j).
inline ParamCircuit build_zz_map(const FeatureMapSpec& spec) {
  if (spec.kind != FeatureMapKind::ZZ) {
    throw std::invalid_argument("build_zz_map: spec kind is not ZZ");
  }
  detail::validate_map_spec(spec, 2);
  ParamCircuit circ = detail::map_skeleton(spec);
  const auto pairs = entangled_pairs(spec.entanglement, spec.n_features);
  for (int rep = 0; rep < spec.reps; ++rep) {
    detail::append_h_layer(circ);
    for (int q = 0; q < spec.n_features; ++q) {
      append_pauli_evolution(circ, {{q, 'Z'}}, data_map_phi_expr({q}));
    }
    for (const auto& [i, j] : pairs) {
      append_pauli_evolution(circ, {{i, 'Z'}, {j, 'Z'}},
                             data_map_phi_expr({i, j}));
    }
  }
  return circ;
}

/// General Pauli map: per rep, an H layer then one evolution block per label
/// in pauli_strings — 1-axis labels over every qubit, 2-axis labels over the
/// entanglement set, with label character k acting on the k-th (ascending)
/// qubit of the subset.
inline ParamCircuit build_pauli_map(const FeatureMapSpec& spec) {
  if (spec.kind != FeatureMapKind::Pauli) {
    throw std::invalid_argument("build_pauli_map: spec kind is not Pauli");
  }
  detail::validate_map_spec(spec, 1);
  if (spec.pauli_strings.empty()) {
    throw std::invalid_argument("build_pauli_map: empty pauli_strings");
  }
  for (const std::string& label : spec.pauli_strings) {
    if (label.empty() || label.size() > 2) {
      throw std::invalid_argument("build_pauli_map: label '" + label +
                                  "' must have length 1 or 2");
    }
    for (char c : label) {
      if (c != 'X' && c != 'Y' && c != 'Z') {
        throw std::invalid_argument(
            "build_pauli_map: label character outside {X,Y,Z} in '" + label +
            "'");
      }
    }
  }
  ParamCircuit circ = detail::map_skeleton(spec);
  const auto pairs = entangled_pairs(spec.entanglement, spec.n_features);
  for (int rep = 0; rep < spec.reps; ++rep) {
    detail::append_h_layer(circ);
    for (const std::string& label : spec.pauli_strings) {
      if (label.size() == 1) {
        for (int q = 0; q < spec.n_features; ++q) {
          append_pauli_evolution(circ, {{q, label[0]}},
                                 data_map_phi_expr({q}));
        }
      } else {
        for (const auto& [i, j] : pairs) {
          append_pauli_evolution(circ, {{i, label[0]}, {j, label[1]}},
                                 data_map_phi_expr({i, j}));
        }
      }
    }
  }
  return circ;
}

/// Dispatch on spec.kind.
inline ParamCircuit build_feature_map(const FeatureMapSpec& spec) {
  switch (spec.kind) {
    case FeatureMapKind::Z: return build_z_map(spec);
    case FeatureMapKind::ZZ: return build_zz_map(spec);
    case FeatureMapKind::Pauli: return build_pauli_map(spec);
  }
  throw std::logic_error("build_feature_map: unreachable");
}

}  // namespace vqcbench
