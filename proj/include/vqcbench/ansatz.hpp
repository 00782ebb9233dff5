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

// The four trainable circuits: RealAmplitudes, EfficientSU2, TwoLocal and
// PauliTwoDesign, with deterministic parameter naming theta0..theta{k-1}.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqcbench/circuit.hpp"

namespace vqcbench {

enum class AnsatzKind { RealAmplitudes, EfficientSU2, TwoLocal, PauliTwoDesign };

inline const char* ansatz_name(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::RealAmplitudes: return "real_amplitudes";
    case AnsatzKind::EfficientSU2: return "efficient_su2";
    case AnsatzKind::TwoLocal: return "two_local";
    case AnsatzKind::PauliTwoDesign: return "pauli_two_design";
  }
  return "?";
}

struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::RealAmplitudes;
  int n_qubits = 0;
  int reps = 1;
  Entanglement entanglement = Entanglement::Linear;
  std::uint64_t seed = 0;  // PauliTwoDesign axis choice only
};

/// Closed-form trainable-parameter count for each kind.
inline int ansatz_parameter_count(AnsatzKind kind, int n_qubits, int reps) {
  switch (kind) {
    case AnsatzKind::RealAmplitudes:
    case AnsatzKind::TwoLocal:
    case AnsatzKind::PauliTwoDesign:
      return n_qubits * (reps + 1);
    case AnsatzKind::EfficientSU2:
      return 2 * n_qubits * (reps + 1);
  }
  throw std::logic_error("ansatz_parameter_count: unreachable");
}

namespace detail {

inline void validate_ansatz_spec(const AnsatzSpec& spec) {
  if (spec.n_qubits < 1 || spec.n_qubits > kMaxQubits) {
    throw std::invalid_argument("ansatz: n_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(spec.n_qubits));
  }
  if (spec.reps < 1) {
    throw std::invalid_argument("ansatz: reps must be >= 1");
  }
}

inline ParamCircuit ansatz_skeleton(const AnsatzSpec& spec, int n_params) {
  ParamCircuit circ(spec.n_qubits);
  for (int p = 0; p < n_params; ++p) {
    circ.add_parameter("theta" + std::to_string(p));
  }
  return circ;
}

/// One rotation of `kind` per qubit, consuming parameters
/// theta{first}..theta{first + n - 1} in qubit order.
inline void append_rotation_layer(ParamCircuit& circ, GateKind kind,
                                  int first) {
  for (int q = 0; q < circ.n_qubits(); ++q) {
    circ.append_symbolic(kind, q, ParamExpr::symbol(first + q));
  }
}

inline void append_entangling_layer(ParamCircuit& circ, GateKind kind,
                                    Entanglement pattern) {
  for (const auto& [a, b] : entangled_pairs(pattern, circ.n_qubits())) {
    circ.append(GateOp::two(kind, a, b));
  }
}

}  // namespace detail

/// (reps+1) RY layers alternating with reps entangling CX layers; all
/// amplitudes of its output states are real. n*(reps+1) parameters.
inline ParamCircuit build_real_amplitudes(const AnsatzSpec& spec) {
  if (spec.kind != AnsatzKind::RealAmplitudes) {
    throw std::invalid_argument(
        "build_real_amplitudes: spec kind is not RealAmplitudes");
  }
  detail::validate_ansatz_spec(spec);
  ParamCircuit circ = detail::ansatz_skeleton(
      spec, ansatz_parameter_count(spec.kind, spec.n_qubits, spec.reps));
  detail::append_rotation_layer(circ, GateKind::RY, 0);
  for (int rep = 1; rep <= spec.reps; ++rep) {
    detail::append_entangling_layer(circ, GateKind::CX, spec.entanglement);
    detail::append_rotation_layer(circ, GateKind::RY, rep * spec.n_qubits);
  }
  return circ;
}

/// (reps+1) [RY layer, RZ layer] blocks alternating with reps CX layers;
/// 2n*(reps+1) parameters.
inline ParamCircuit build_efficient_su2(const AnsatzSpec& spec) {
  if (spec.kind != AnsatzKind::EfficientSU2) {
    throw std::invalid_argument(
        "build_efficient_su2: spec kind is not EfficientSU2");
  }
  detail::validate_ansatz_spec(spec);
  ParamCircuit circ = detail::ansatz_skeleton(
      spec, ansatz_parameter_count(spec.kind, spec.n_qubits, spec.reps));
  for (int block = 0; block <= spec.reps; ++block) {
    if (block > 0) {
      detail::append_entangling_layer(circ, GateKind::CX, spec.entanglement);
    }
    const int first = 2 * block * spec.n_qubits;
    detail::append_rotation_layer(circ, GateKind::RY, first);
    detail::append_rotation_layer(circ, GateKind::RZ, first + spec.n_qubits);
  }
  return circ;
}

/// Alternating rotation/entanglement skeleton with explicitly chosen gates;
/// with RY/CX it is structurally identical to RealAmplitudes.
inline ParamCircuit build_two_local(const AnsatzSpec& spec,
                                    GateKind rotation_kind = GateKind::RY,
                                    GateKind entangle_kind = GateKind::CX) {
  if (spec.kind != AnsatzKind::TwoLocal) {
    throw std::invalid_argument("build_two_local: spec kind is not TwoLocal");
  }
  if (rotation_kind != GateKind::RY) {
    throw std::invalid_argument("build_two_local: rotation gate must be RY");
  }
  if (entangle_kind != GateKind::CX) {
    throw std::invalid_argument("build_two_local: entangling gate must be CX");
  }
  detail::validate_ansatz_spec(spec);
  ParamCircuit circ = detail::ansatz_skeleton(
      spec, ansatz_parameter_count(spec.kind, spec.n_qubits, spec.reps));
  detail::append_rotation_layer(circ, rotation_kind, 0);
  for (int rep = 1; rep <= spec.reps; ++rep) {
    detail::append_entangling_layer(circ, entangle_kind, spec.entanglement);
    detail::append_rotation_layer(circ, rotation_kind, rep * spec.n_qubits);
  }
  return circ;
}

/// Initial RY(pi/4) on every qubit, then reps blocks of [per-qubit rotation
/// about a seeded random axis in {X,Y,Z}, brick-pattern CZ layer] plus a
/// final rotation layer. n*(reps+1) parameters; axes fully determined by
/// spec.seed.
inline ParamCircuit build_pauli_two_design(const AnsatzSpec& spec) {
  if (spec.kind != AnsatzKind::PauliTwoDesign) {
    throw std::invalid_argument(
        "build_pauli_two_design: spec kind is not PauliTwoDesign");
  }
  detail::validate_ansatz_spec(spec);
  ParamCircuit circ = detail::ansatz_skeleton(
      spec, ansatz_parameter_count(spec.kind, spec.n_qubits, spec.reps));
  for (int q = 0; q < spec.n_qubits; ++q) {
    circ.append(GateOp::rotation(GateKind::RY, q, M_PI / 4.0));
  }
  std::mt19937_64 rng(spec.seed);
  const GateKind axes[3] = {GateKind::RX, GateKind::RY, GateKind::RZ};
  const auto append_random_rotation_layer = [&](int first) {
    for (int q = 0; q < spec.n_qubits; ++q) {
      circ.append_symbolic(axes[rng() % 3], q, ParamExpr::symbol(first + q));
    }
  };
  for (int block = 0; block < spec.reps; ++block) {
    append_random_rotation_layer(block * spec.n_qubits);
    // Brick pattern: pairs start at even indices in even blocks, odd in odd.
    for (int q = block % 2; q + 1 < spec.n_qubits; q += 2) {
      circ.append(GateOp::two(GateKind::CZ, q, q + 1));
    }
  }
  append_random_rotation_layer(spec.reps * spec.n_qubits);
  return circ;
}

/// Dispatch on spec.kind.
inline ParamCircuit build_ansatz(const AnsatzSpec& spec) {
  switch (spec.kind) {
    case AnsatzKind::RealAmplitudes: return build_real_amplitudes(spec);
    case AnsatzKind::EfficientSU2: return build_efficient_su2(spec);
    case AnsatzKind::TwoLocal: return build_two_local(spec);
    case AnsatzKind::PauliTwoDesign: return build_pauli_two_design(spec);
  }
  throw std::logic_error("build_ansatz: unreachable");
}

}  // namespace vqcbench
