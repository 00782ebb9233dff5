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

// Dense statevector simulation: the gate set, gate application, probability
// extraction, shot sampling and per-qubit Pauli-Z expectation values.
//
// Qubit q corresponds to bit q of the basis-state index (qubit 0 is the
// least-significant bit).

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vqcbench {

using cdouble = std::complex<double>;

inline constexpr int kMaxQubits = 20;

enum class GateKind { I, X, Y, Z, H, S, T, RX, RY, RZ, P, CX, CZ, SWAP };

inline const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::I: return "I";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::P: return "P";
    case GateKind::CX: return "CX";
    case GateKind::CZ: return "CZ";
    case GateKind::SWAP: return "SWAP";
  }
  return "?";
}

/// True for the parameterized kinds (rotation/phase gates carrying an angle).
inline bool gate_takes_angle(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
         kind == GateKind::P;
}

/// Number of qubits the gate acts on (1 or 2).
inline int gate_arity(GateKind kind) {
  return (kind == GateKind::CX || kind == GateKind::CZ ||
          kind == GateKind::SWAP)
             ? 2
             : 1;
}

/// One concrete gate application: kind, target qubit(s) and, for the
/// rotation/phase kinds, an angle in radians.
struct GateOp {
  GateKind kind = GateKind::I;
  std::array<int, 2> targets{-1, -1};
  int num_targets = 0;
  std::optional<double> angle;

  static GateOp single(GateKind kind, int qubit) {
    if (gate_arity(kind) != 1) {
      throw std::invalid_argument(std::string("GateOp::single: ") +
                                  gate_name(kind) + " is a two-qubit gate");
    }
    if (gate_takes_angle(kind)) {
      throw std::invalid_argument(std::string("GateOp::single: ") +
                                  gate_name(kind) + " requires an angle");
    }
    GateOp op;
    op.kind = kind;
    op.targets = {qubit, -1};
    op.num_targets = 1;
    return op;
  }

  static GateOp rotation(GateKind kind, int qubit, double angle) {
    if (!gate_takes_angle(kind)) {
      throw std::invalid_argument(std::string("GateOp::rotation: ") +
                                  gate_name(kind) + " takes no angle");
    }
    GateOp op;
    op.kind = kind;
    op.targets = {qubit, -1};
    op.num_targets = 1;
    op.angle = angle;
    return op;
  }

  static GateOp two(GateKind kind, int a, int b) {
    if (gate_arity(kind) != 2) {
      throw std::invalid_argument(std::string("GateOp::two: ") +
                                  gate_name(kind) + " is a single-qubit gate");
    }
    GateOp op;
    op.kind = kind;
    op.targets = {a, b};
    op.num_targets = 2;
    return op;
  }

  std::span<const int> target_span() const {
    return {targets.data(), static_cast<std::size_t>(num_targets)};
  }
};

/// Complex amplitudes over the 2^n_qubits computational basis states.
struct StateVector {
  int n_qubits = 0;
  std::vector<cdouble> amplitudes;

  std::size_t dim() const { return amplitudes.size(); }

  double norm_squared() const {
    double s = 0.0;
    for (const cdouble& a : amplitudes) s += std::norm(a);
    return s;
  }
};

/// Nonnegative basis-state probabilities summing to 1.
struct BasisDistribution {
  std::vector<double> probabilities;
};

inline StateVector new_zero_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument(
        "new_zero_state: n_qubits must be in [1, " +
        std::to_string(kMaxQubits) + "], got " + std::to_string(n_qubits));
  }
  StateVector state;
  state.n_qubits = n_qubits;
  state.amplitudes.assign(std::size_t{1} << n_qubits, cdouble(0.0, 0.0));
  state.amplitudes[0] = cdouble(1.0, 0.0);
  return state;
}

inline void validate_gate_op(const GateOp& op, int n_qubits) {
  if (op.num_targets != gate_arity(op.kind)) {
    throw std::invalid_argument(std::string("gate ") + gate_name(op.kind) +
                                " expects " +
                                std::to_string(gate_arity(op.kind)) +
                                " target(s)");
  }
  for (int i = 0; i < op.num_targets; ++i) {
    const int q = op.targets[static_cast<std::size_t>(i)];
    if (q < 0 || q >= n_qubits) {
      throw std::invalid_argument(std::string("gate ") + gate_name(op.kind) +
                                  ": target " + std::to_string(q) +
                                  " out of range for " +
                                  std::to_string(n_qubits) + " qubit(s)");
    }
  }
  if (op.num_targets == 2 && op.targets[0] == op.targets[1]) {
    throw std::invalid_argument(std::string("gate ") + gate_name(op.kind) +
                                ": duplicate target qubit " +
                                std::to_string(op.targets[0]));
  }
  if (gate_takes_angle(op.kind) && !op.angle.has_value()) {
    throw std::invalid_argument(std::string("gate ") + gate_name(op.kind) +
                                ": missing angle");
  }
  if (!gate_takes_angle(op.kind) && op.angle.has_value()) {
    throw std::invalid_argument(std::string("gate ") + gate_name(op.kind) +
                                ": unexpected angle");
  }
}

/// 2x2 matrix of a single-qubit gate kind.
inline Eigen::Matrix2cd gate_matrix_1q(GateKind kind, double angle = 0.0) {
  const cdouble i1(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (kind) {
    case GateKind::I:
      m << 1, 0, 0, 1;
      return m;
    case GateKind::X:
      m << 0, 1, 1, 0;
      return m;
    case GateKind::Y:
      m << 0, -i1, i1, 0;
      return m;
    case GateKind::Z:
      m << 1, 0, 0, -1;
      return m;
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      m << s, s, s, -s;
      return m;
    }
    case GateKind::S:
      m << 1, 0, 0, i1;
      return m;
    case GateKind::T:
      m << 1, 0, 0, std::exp(i1 * (M_PI / 4.0));
      return m;
    case GateKind::RX: {
      const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
      m << c, -i1 * s, -i1 * s, c;
      return m;
    }
    case GateKind::RY: {
      const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
      m << c, -s, s, c;
      return m;
    }
    case GateKind::RZ:
      // RZ(theta) = diag(e^{-i theta/2}, e^{i theta/2})
      m << std::exp(-i1 * (angle / 2.0)), 0, 0, std::exp(i1 * (angle / 2.0));
      return m;
    case GateKind::P:
      // P(lambda) = diag(1, e^{i lambda})
      m << 1, 0, 0, std::exp(i1 * angle);
      return m;
    default:
      throw std::invalid_argument(std::string("gate_matrix_1q: ") +
                                  gate_name(kind) + " is not single-qubit");
  }
}

/// 4x4 matrix of a two-qubit gate kind, indexed by local basis
/// l = bit(targets[0]) + 2*bit(targets[1]).
inline Eigen::Matrix4cd gate_matrix_2q(GateKind kind) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  switch (kind) {
    case GateKind::CX:
      // control = targets[0], target = targets[1]
      m(0, 0) = 1;
      m(2, 2) = 1;
      m(3, 1) = 1;
      m(1, 3) = 1;
      return m;
    case GateKind::CZ:
      m(0, 0) = 1;
      m(1, 1) = 1;
      m(2, 2) = 1;
      m(3, 3) = -1;
      return m;
    case GateKind::SWAP:
      m(0, 0) = 1;
      m(2, 1) = 1;
      m(1, 2) = 1;
      m(3, 3) = 1;
      return m;
    default:
      throw std::invalid_argument(std::string("gate_matrix_2q: ") +
                                  gate_name(kind) + " is not two-qubit");
  }
}

/// Matrix of any gate op (2x2 or 4x4) in its local target basis.
inline Eigen::MatrixXcd gate_matrix(const GateOp& op) {
  if (gate_arity(op.kind) == 1) {
    return gate_matrix_1q(op.kind, op.angle.value_or(0.0));
  }
  return gate_matrix_2q(op.kind);
}

/// Embedding of a gate op into the full 2^n x 2^n space. Used by the dense
/// unitary oracle; the statevector path below never builds this matrix.
inline Eigen::MatrixXcd embed_gate(const GateOp& op, int n_qubits) {
  validate_gate_op(op, n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  if (op.num_targets == 1) {
    const Eigen::Matrix2cd m = gate_matrix_1q(op.kind, op.angle.value_or(0.0));
    const std::size_t t = std::size_t{1} << op.targets[0];
    for (std::size_t col = 0; col < dim; ++col) {
      const int cb = (col & t) ? 1 : 0;
      const std::size_t base = col & ~t;
      for (int rb = 0; rb < 2; ++rb) {
        const std::size_t row = base | (rb ? t : 0);
        full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
            m(rb, cb);
      }
    }
  } else {
    const Eigen::Matrix4cd m = gate_matrix_2q(op.kind);
    const std::size_t t0 = std::size_t{1} << op.targets[0];
    const std::size_t t1 = std::size_t{1} << op.targets[1];
    for (std::size_t col = 0; col < dim; ++col) {
      const int cl = ((col & t0) ? 1 : 0) | (((col & t1) ? 1 : 0) << 1);
      const std::size_t base = col & ~t0 & ~t1;
      for (int rl = 0; rl < 4; ++rl) {
        const std::size_t row = base | ((rl & 1) ? t0 : 0) | ((rl & 2) ? t1 : 0);
        full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
            m(rl, cl);
      }
    }
  }
  return full;
}

namespace detail {

inline void apply_1q_matrix(StateVector& state, const Eigen::Matrix2cd& m,
                            int target) {
  const std::size_t step = std::size_t{1} << target;
  const std::size_t block = step << 1;
  const std::size_t dim = state.dim();
  // Diagonal fast path (Z, S, T, RZ, P).
  if (m(0, 1) == cdouble(0.0) && m(1, 0) == cdouble(0.0)) {
    const cdouble d0 = m(0, 0), d1 = m(1, 1);
    for (std::size_t base = 0; base < dim; base += block) {
      for (std::size_t off = 0; off < step; ++off) {
        state.amplitudes[base + off] *= d0;
        state.amplitudes[base + off + step] *= d1;
      }
    }
    return;
  }
  const cdouble m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::size_t base = 0; base < dim; base += block) {
    for (std::size_t off = 0; off < step; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + step;
      const cdouble a = state.amplitudes[i0];
      const cdouble b = state.amplitudes[i1];
      state.amplitudes[i0] = m00 * a + m01 * b;
      state.amplitudes[i1] = m10 * a + m11 * b;
    }
  }
}

}  // namespace detail

/// Applies the gate's unitary to the state in place and returns the state.
inline StateVector& apply_gate(StateVector& state, const GateOp& op) {
  validate_gate_op(op, state.n_qubits);
  const std::size_t dim = state.dim();
  switch (op.kind) {
    case GateKind::CX: {
      const std::size_t c = std::size_t{1} << op.targets[0];
      const std::size_t t = std::size_t{1} << op.targets[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & c) && !(i & t)) {
          std::swap(state.amplitudes[i], state.amplitudes[i | t]);
        }
      }
      return state;
    }
    case GateKind::CZ: {
      const std::size_t mask = (std::size_t{1} << op.targets[0]) |
                               (std::size_t{1} << op.targets[1]);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) state.amplitudes[i] = -state.amplitudes[i];
      }
      return state;
    }
    case GateKind::SWAP: {
      const std::size_t a = std::size_t{1} << op.targets[0];
      const std::size_t b = std::size_t{1} << op.targets[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & a) && !(i & b)) {
          std::swap(state.amplitudes[i], state.amplitudes[(i & ~a) | b]);
        }
      }
      return state;
    }
    default: {
      detail::apply_1q_matrix(
          state, gate_matrix_1q(op.kind, op.angle.value_or(0.0)),
          op.targets[0]);
      return state;
    }
  }
}

/// Born-rule probabilities |amplitude|^2 of every basis state.
inline BasisDistribution probabilities(const StateVector& state) {
  BasisDistribution dist;
  dist.probabilities.reserve(state.dim());
  for (const cdouble& a : state.amplitudes) {
    dist.probabilities.push_back(std::norm(a));
  }
  return dist;
}

/// Draws `shots` basis-state samples from the distribution. Deterministic for
/// a fixed seed; counts sum to shots.
inline std::map<std::size_t, long> sample_counts(const BasisDistribution& dist,
                                                 long shots,
                                                 std::uint64_t seed) {
  if (shots < 1) {
    throw std::invalid_argument("sample_counts: shots must be >= 1, got " +
                                std::to_string(shots));
  }
  std::vector<double> cumulative;
  cumulative.reserve(dist.probabilities.size());
  double acc = 0.0;
  for (double p : dist.probabilities) {
    acc += p;
    cumulative.push_back(acc);
  }
  const double total = acc;
  std::mt19937_64 rng(seed);
  std::map<std::size_t, long> counts;
  for (long s = 0; s < shots; ++s) {
    // 53-bit uniform in [0, 1); portable for a fixed seed.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t index = static_cast<std::size_t>(
        std::distance(cumulative.begin(), it));
    if (index >= cumulative.size()) index = cumulative.size() - 1;
    ++counts[index];
  }
  return counts;
}

/// Per-qubit Pauli-Z expectation values: entry q = sum_i p_i * (+1 or -1 by
/// bit q of i). Each entry lies in [-1, 1].
inline std::vector<double> expectation_z_each(const StateVector& state) {
  std::vector<double> z(static_cast<std::size_t>(state.n_qubits), 0.0);
  const std::size_t dim = state.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    const double p = std::norm(state.amplitudes[i]);
    if (p == 0.0) continue;
    for (int q = 0; q < state.n_qubits; ++q) {
      z[static_cast<std::size_t>(q)] += (i >> q) & 1 ? -p : p;
    }
  }
  return z;
}

}  // namespace vqcbench
