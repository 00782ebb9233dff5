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

// Parameterized circuit intermediate representation: symbolic angle
// expressions, parameter binding, composition, simulation, small-n unitary
// extraction, and the Pauli-string evolution gadget.

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vqcbench/simcore.hpp"

namespace vqcbench {

/// Angle expression of the form coefficient * prod_k (constant_k +
/// scale_k * symbol_k) — exactly the family the data-mapping functions
/// need (x_i, 2*x_i, 2*(pi - x_i)(pi - x_j), plain constants).
struct ParamExpr {
  /// One factor: constant + scale * value_of(symbol).
  struct Factor {
    double constant = 0.0;
    double scale = 1.0;
    int symbol = 0;  // index into the owning circuit's parameter_names
  };

  double coefficient = 1.0;
  std::vector<Factor> factors;  // empty => the expression is a constant

  static ParamExpr constant(double value) {
    ParamExpr e;
    e.coefficient = value;
    return e;
  }

  /// The bare symbol x_index.
  static ParamExpr symbol(int index) {
    if (index < 0) throw std::invalid_argument("ParamExpr: negative symbol");
    ParamExpr e;
    e.factors.push_back(Factor{0.0, 1.0, index});
    return e;
  }

  static ParamExpr product(double coefficient, std::vector<Factor> factors) {
    for (const Factor& f : factors) {
      if (f.symbol < 0) {
        throw std::invalid_argument("ParamExpr: negative symbol");
      }
    }
    ParamExpr e;
    e.coefficient = coefficient;
    e.factors = std::move(factors);
    return e;
  }

  /// Copy with the coefficient multiplied by `c`.
  ParamExpr scaled(double c) const {
    ParamExpr e = *this;
    e.coefficient *= c;
    return e;
  }

  bool is_constant() const { return factors.empty(); }

  int max_symbol() const {
    int m = -1;
    for (const Factor& f : factors) m = std::max(m, f.symbol);
    return m;
  }

  void shift_symbols(int offset) {
    for (Factor& f : factors) f.symbol += offset;
  }

  double evaluate(std::span<const double> values) const {
    double result = coefficient;
    for (const Factor& f : factors) {
      if (f.symbol >= static_cast<int>(values.size())) {
        throw std::logic_error("ParamExpr: symbol " + std::to_string(f.symbol) +
                               " has no bound value");
      }
      result *= f.constant + f.scale * values[static_cast<std::size_t>(f.symbol)];
    }
    if (!std::isfinite(result)) {
      throw std::invalid_argument("ParamExpr: non-finite evaluation");
    }
    return result;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    auto fmt = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", v);
      return std::string(buf);
    };
    if (is_constant()) return fmt(coefficient);
    std::ostringstream out;
    if (coefficient != 1.0) out << fmt(coefficient) << "*";
    bool first = true;
    for (const Factor& f : factors) {
      if (!first) out << "*";
      first = false;
      const std::string name =
          f.symbol < static_cast<int>(names.size())
              ? names[static_cast<std::size_t>(f.symbol)]
              : "p" + std::to_string(f.symbol);
      if (f.constant == 0.0 && f.scale == 1.0) {
        out << name;
      } else if (f.constant == 0.0) {
        out << "(" << fmt(f.scale) << "*" << name << ")";
      } else {
        out << "(" << fmt(f.constant) << (f.scale < 0 ? "-" : "+")
            << (std::abs(f.scale) == 1.0 ? "" : fmt(std::abs(f.scale)) + "*")
            << name << ")";
      }
    }
    return out.str();
  }
};

/// One circuit entry: a concrete gate, or a rotation whose angle is a
/// ParamExpr to be evaluated at bind time.
struct CircuitOp {
  GateOp gate;
  std::optional<ParamExpr> angle_expr;

  bool is_symbolic() const { return angle_expr.has_value(); }
};

/// Ordered gate list over a fixed register, with declared free symbols.
class ParamCircuit {
 public:
  ParamCircuit() = default;

  explicit ParamCircuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
      throw std::invalid_argument("ParamCircuit: n_qubits must be in [1, " +
                                  std::to_string(kMaxQubits) + "], got " +
                                  std::to_string(n_qubits));
    }
  }

  int n_qubits() const { return n_qubits_; }
  const std::vector<CircuitOp>& ops() const { return ops_; }
  const std::vector<std::string>& parameter_names() const { return names_; }
  bool has_free_symbols() const { return !names_.empty(); }
  std::size_t gate_count() const { return ops_.size(); }

  /// Declares a new free symbol; returns its index. Declaration order is
  /// the canonical parameter order.
  int add_parameter(const std::string& name) {
    if (parameter_index(name) >= 0) {
      throw std::invalid_argument("ParamCircuit: duplicate parameter " + name);
    }
    names_.push_back(name);
    return static_cast<int>(names_.size()) - 1;
  }

  int parameter_index(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return static_cast<int>(i);
    }
    return -1;
  }

  void append(const GateOp& op) {
    validate_gate_op(op, n_qubits_);
    ops_.push_back(CircuitOp{op, std::nullopt});
  }

  /// Appends a rotation/phase gate whose angle is computed from `expr`.
  void append_symbolic(GateKind kind, int qubit, ParamExpr expr) {
    if (!gate_takes_angle(kind)) {
      throw std::invalid_argument(std::string("append_symbolic: ") +
                                  gate_name(kind) + " takes no angle");
    }
    if (expr.max_symbol() >= static_cast<int>(names_.size())) {
      throw std::invalid_argument(
          "append_symbolic: expression references undeclared symbol " +
          std::to_string(expr.max_symbol()));
    }
    GateOp gate = GateOp::rotation(kind, qubit, 0.0);
    validate_gate_op(gate, n_qubits_);
    gate.angle.reset();  // the angle lives in the expression until bind
    ops_.push_back(CircuitOp{gate, std::move(expr)});
  }

  // Used by compose() to splice another circuit's content in.
  void append_raw(CircuitOp op) { ops_.push_back(std::move(op)); }

 private:
  int n_qubits_ = 0;
  std::vector<CircuitOp> ops_;
  std::vector<std::string> names_;
};

/// Concatenation: front's ops then back's ops. Parameter lists are
/// concatenated and must be disjoint.
inline ParamCircuit compose(const ParamCircuit& front,
                            const ParamCircuit& back) {
  if (front.n_qubits() != back.n_qubits()) {
    throw std::invalid_argument(
        "compose: qubit-count mismatch (" + std::to_string(front.n_qubits()) +
        " vs " + std::to_string(back.n_qubits()) + ")");
  }
  for (const std::string& name : back.parameter_names()) {
    if (front.parameter_index(name) >= 0) {
      throw std::invalid_argument("compose: parameter name collision on " +
                                  name);
    }
  }
  ParamCircuit out(front.n_qubits());
  for (const std::string& name : front.parameter_names()) {
    out.add_parameter(name);
  }
  for (const std::string& name : back.parameter_names()) {
    out.add_parameter(name);
  }
  for (const CircuitOp& op : front.ops()) out.append_raw(op);
  const int offset = static_cast<int>(front.parameter_names().size());
  for (CircuitOp op : back.ops()) {
    if (op.angle_expr) op.angle_expr->shift_symbols(offset);
    out.append_raw(std::move(op));
  }
  return out;
}

/// Evaluates every symbolic angle under `assignment` (which must cover all
/// declared symbols with finite values) and returns a fully concrete circuit.
inline ParamCircuit bind_parameters(const ParamCircuit& circ,
                         const std::map<std::string, double>& assignment) {
  std::vector<double> values;
  values.reserve(circ.parameter_names().size());
  for (const std::string& name : circ.parameter_names()) {
    const auto it = assignment.find(name);
    if (it == assignment.end()) {
      throw std::invalid_argument("bind_parameters: missing value for symbol " + name);
    }
    if (!std::isfinite(it->second)) {
      throw std::invalid_argument("bind_parameters: non-finite value for symbol " + name);
    }
    values.push_back(it->second);
  }
  ParamCircuit out(circ.n_qubits());
  for (const CircuitOp& op : circ.ops()) {
    if (op.is_symbolic()) {
      GateOp g = op.gate;
      g.angle = op.angle_expr->evaluate(values);
      out.append(g);
    } else {
      out.append(op.gate);
    }
  }
  return out;
}

/// Positional convenience: values in declaration order.
inline ParamCircuit bind_parameters(const ParamCircuit& circ,
                         std::span<const double> values) {
  if (values.size() != circ.parameter_names().size()) {
    throw std::invalid_argument(
        "bind_parameters: expected " + std::to_string(circ.parameter_names().size()) +
        " values, got " + std::to_string(values.size()));
  }
  std::map<std::string, double> assignment;
  for (std::size_t i = 0; i < values.size(); ++i) {
    assignment[circ.parameter_names()[i]] = values[i];
  }
  return bind_parameters(circ, assignment);
}

/// Runs the circuit on |0...0> with symbol values given positionally in
/// declaration order. Evaluates expressions in place — the hot path for
/// repeated evaluation, equivalent to bind_parameters followed by simulate.
inline StateVector simulate_bound(const ParamCircuit& circ,
                                  std::span<const double> values) {
  if (values.size() != circ.parameter_names().size()) {
    throw std::invalid_argument(
        "simulate_bound: expected " +
        std::to_string(circ.parameter_names().size()) + " values, got " +
        std::to_string(values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("simulate_bound: non-finite symbol value");
    }
  }
  StateVector state = new_zero_state(circ.n_qubits());
  for (const CircuitOp& op : circ.ops()) {
    if (op.is_symbolic()) {
      GateOp g = op.gate;
      g.angle = op.angle_expr->evaluate(values);
      apply_gate(state, g);
    } else {
      apply_gate(state, op.gate);
    }
  }
  return state;
}

/// Runs the circuit on |0...0>. The circuit must have no free symbols.
inline StateVector simulate(const ParamCircuit& circ) {
  if (circ.has_free_symbols()) {
    throw std::invalid_argument("simulate: circuit has unbound symbols (" +
                                circ.parameter_names().front() + ", ...)");
  }
  return simulate_bound(circ, {});
}

/// Dense unitary of a fully bound circuit, product of per-gate embeddings in
/// application order. Test/oracle path only, hence the small-n guard.
inline Eigen::MatrixXcd to_unitary(const ParamCircuit& circ) {
  if (circ.n_qubits() > 4) {
    throw std::invalid_argument("to_unitary: n_qubits " +
                                std::to_string(circ.n_qubits()) +
                                " exceeds the dense-matrix limit of 4");
  }
  if (circ.has_free_symbols()) {
    throw std::invalid_argument("to_unitary: circuit has unbound symbols");
  }
  const Eigen::Index dim = Eigen::Index(1) << circ.n_qubits();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const CircuitOp& op : circ.ops()) {
    GateOp g = op.gate;
    if (op.is_symbolic()) g.angle = op.angle_expr->evaluate({});
    u = embed_gate(g, circ.n_qubits()) * u;
  }
  return u;
}

/// Appends the standard gadget for exp(i * angle * prod P): basis changes
/// (H for X, RX(pi/2) for Y), a CX chain onto the highest-index qubit of the
/// string, RZ(-2*angle) there, then un-computation in reverse. Exact under
/// the RZ(theta) = diag(e^{-i theta/2}, e^{i theta/2}) convention.
inline void append_pauli_evolution(ParamCircuit& circ,
                                   const std::map<int, char>& pauli_string,
                                   const ParamExpr& angle_expr) {
  if (pauli_string.empty()) {
    throw std::invalid_argument("append_pauli_evolution: empty Pauli string");
  }
  for (const auto& [qubit, label] : pauli_string) {
    if (qubit < 0 || qubit >= circ.n_qubits()) {
      throw std::invalid_argument("append_pauli_evolution: qubit " +
                                  std::to_string(qubit) + " out of range");
    }
    if (label != 'X' && label != 'Y' && label != 'Z') {
      throw std::invalid_argument(
          std::string("append_pauli_evolution: bad Pauli label ") + label);
    }
  }
  // Into the Z basis.
  for (const auto& [qubit, label] : pauli_string) {
    if (label == 'X') circ.append(GateOp::single(GateKind::H, qubit));
    if (label == 'Y') circ.append(GateOp::rotation(GateKind::RX, qubit, M_PI / 2.0));
  }
  // Parity chain onto the last qubit (map iteration is index-ascending).
  std::vector<int> qubits;
  qubits.reserve(pauli_string.size());
  for (const auto& [qubit, label] : pauli_string) qubits.push_back(qubit);
  for (std::size_t k = 0; k + 1 < qubits.size(); ++k) {
    circ.append(GateOp::two(GateKind::CX, qubits[k], qubits[k + 1]));
  }
  const int last = qubits.back();
  const ParamExpr rz = angle_expr.scaled(-2.0);
  if (rz.is_constant()) {
    circ.append(GateOp::rotation(GateKind::RZ, last, rz.evaluate({})));
  } else {
    circ.append_symbolic(GateKind::RZ, last, rz);
  }
  // Un-compute.
  for (std::size_t k = qubits.size() - 1; k-- > 0;) {
    circ.append(GateOp::two(GateKind::CX, qubits[k], qubits[k + 1]));
  }
  for (auto it = pauli_string.rbegin(); it != pauli_string.rend(); ++it) {
    if (it->second == 'X') circ.append(GateOp::single(GateKind::H, it->first));
    if (it->second == 'Y') {
      circ.append(GateOp::rotation(GateKind::RX, it->first, -M_PI / 2.0));
    }
  }
}

/// Two-qubit coupling patterns shared by the circuit builders.
enum class Entanglement { Linear, Full, Circular };

inline const char* entanglement_name(Entanglement e) {
  switch (e) {
    case Entanglement::Linear: return "linear";
    case Entanglement::Full: return "full";
    case Entanglement::Circular: return "circular";
  }
  return "?";
}

/// Ordered qubit pairs of a coupling pattern: linear chain (i, i+1); full =
/// all i < j in lexicographic order; circular = linear plus the closing
/// (n-1, 0) pair.
inline std::vector<std::pair<int, int>> entangled_pairs(Entanglement kind,
                                                        int n_qubits) {
  std::vector<std::pair<int, int>> pairs;
  switch (kind) {
    case Entanglement::Linear:
    case Entanglement::Circular:
      for (int q = 0; q + 1 < n_qubits; ++q) pairs.emplace_back(q, q + 1);
      if (kind == Entanglement::Circular && n_qubits > 2) {
        pairs.emplace_back(n_qubits - 1, 0);
      }
      break;
    case Entanglement::Full:
      for (int i = 0; i < n_qubits; ++i) {
        for (int j = i + 1; j < n_qubits; ++j) pairs.emplace_back(i, j);
      }
      break;
  }
  return pairs;
}

/// Plain-text gate list, one op per line: `kind target(s) [angle]`.
inline std::string dump_circuit(const ParamCircuit& circ) {
  std::ostringstream out;
  for (const CircuitOp& op : circ.ops()) {
    out << gate_name(op.gate.kind);
    for (int t : op.gate.target_span()) out << " " << t;
    if (op.is_symbolic()) {
      out << " " << op.angle_expr->to_string(circ.parameter_names());
    } else if (op.gate.angle) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", *op.gate.angle);
      out << " " << buf;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace vqcbench
