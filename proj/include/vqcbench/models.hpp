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

// The three classifier architectures and their loss:
//   VQC  — parity readout on exact basis probabilities,
//   SQNN — parity readout on a shot-sampled distribution (exact at shots=0),
//   EQNN — per-qubit Z expectations feeding a dense layer + sigmoid,
// all sharing one feature-map-then-ansatz circuit.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vqcbench/ansatz.hpp"
#include "vqcbench/featuremaps.hpp"

namespace vqcbench {

enum class Architecture { VQC, SQNN, EQNN };

inline const char* architecture_name(Architecture a) {
  switch (a) {
    case Architecture::VQC: return "vqc";
    case Architecture::SQNN: return "sqnn";
    case Architecture::EQNN: return "eqnn";
  }
  return "?";
}

enum class Readout { Parity, Qubit0 };

inline const char* readout_name(Readout r) {
  return r == Readout::Parity ? "parity" : "qubit0";
}

struct ModelSpec {
  Architecture architecture = Architecture::VQC;
  FeatureMapSpec feature_map;
  AnsatzSpec ansatz;
  long shots = 1024;  // SQNN evaluation only; 0 = exact distribution
  Readout readout = Readout::Parity;
};

/// Trainable parameters in one flat vector:
/// [theta_ansatz | W (EQNN only) | b (EQNN only)].
struct FlatParams {
  std::vector<double> values;
};

struct Prediction {
  double p1 = 0.0;  // probability of class 1
  int label = 0;    // 1 iff p1 >= 0.5

  static Prediction from_p1(double p1) {
    return Prediction{p1, p1 >= 0.5 ? 1 : 0};
  }
};

inline void validate_model_spec(const ModelSpec& spec) {
  if (spec.feature_map.n_features != spec.ansatz.n_qubits) {
    throw std::invalid_argument(
        "model: feature count " + std::to_string(spec.feature_map.n_features) +
        " does not match ansatz qubits " +
        std::to_string(spec.ansatz.n_qubits));
  }
  if (spec.shots < 0) {
    throw std::invalid_argument("model: shots must be >= 0");
  }
}

/// Trainable length: ansatz parameters, plus n_qubits + 1 for EQNN's head.
inline int model_parameter_count(const ModelSpec& spec) {
  validate_model_spec(spec);
  const int ansatz_count = ansatz_parameter_count(
      spec.ansatz.kind, spec.ansatz.n_qubits, spec.ansatz.reps);
  if (spec.architecture == Architecture::EQNN) {
    return ansatz_count + spec.ansatz.n_qubits + 1;
  }
  return ansatz_count;
}

/// Two-class parity readout: p1 sums the probabilities of odd-popcount basis
/// states; p0 = 1 - p1.
inline std::pair<double, double> parity_interpret(
    const BasisDistribution& dist) {
  double p1 = 0.0;
  for (std::size_t i = 0; i < dist.probabilities.size(); ++i) {
    if (std::popcount(i) & 1) p1 += dist.probabilities[i];
  }
  return {1.0 - p1, p1};
}

namespace detail {

inline double readout_p1(const BasisDistribution& dist, Readout readout) {
  if (readout == Readout::Parity) return parity_interpret(dist).second;
  double p1 = 0.0;
  for (std::size_t i = 1; i < dist.probabilities.size(); i += 2) {
    p1 += dist.probabilities[i];  // basis states with qubit 0 set
  }
  return p1;
}

inline double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace detail

/// The feature-map-then-ansatz circuit of a model, compiled once so repeated
/// forward passes only bind values. Circuit symbols are ordered
/// [x_0..x_{n-1}, theta_0..theta_{k-1}].
class CompiledModel {
 public:
  explicit CompiledModel(const ModelSpec& spec)
      : spec_(spec),
        circuit_(compose(build_feature_map(spec.feature_map),
                         build_ansatz(spec.ansatz))),
        n_features_(spec.feature_map.n_features),
        ansatz_count_(ansatz_parameter_count(
            spec.ansatz.kind, spec.ansatz.n_qubits, spec.ansatz.reps)) {
    validate_model_spec(spec);
  }

  const ModelSpec& spec() const { return spec_; }
  int n_qubits() const { return spec_.ansatz.n_qubits; }
  int n_features() const { return n_features_; }
  int ansatz_count() const { return ansatz_count_; }
  int parameter_count() const { return model_parameter_count(spec_); }
  const ParamCircuit& circuit() const { return circuit_; }

  /// Statevector after encoding x and applying the ansatz at params.
  StateVector state_for(std::span<const double> params,
                        std::span<const double> x) const {
    check_lengths(params, x);
    std::vector<double> values;
    values.reserve(x.size() + static_cast<std::size_t>(ansatz_count_));
    values.insert(values.end(), x.begin(), x.end());
    values.insert(values.end(), params.begin(),
                  params.begin() + ansatz_count_);
    return simulate_bound(circuit_, values);
  }

  /// Architecture-dispatched forward pass. `sample_seed` is consumed only by
  /// SQNN in shot mode.
  Prediction predict(std::span<const double> params, std::span<const double> x,
                     std::uint64_t sample_seed = 0) const {
    const StateVector state = state_for(params, x);
    switch (spec_.architecture) {
      case Architecture::VQC:
        return Prediction::from_p1(
            detail::readout_p1(probabilities(state), spec_.readout));
      case Architecture::SQNN: {
        const BasisDistribution dist = probabilities(state);
        if (spec_.shots == 0) {
          return Prediction::from_p1(detail::readout_p1(dist, spec_.readout));
        }
        const auto counts = sample_counts(dist, spec_.shots, sample_seed);
        BasisDistribution empirical;
        empirical.probabilities.assign(dist.probabilities.size(), 0.0);
        for (const auto& [index, count] : counts) {
          empirical.probabilities[index] =
              static_cast<double>(count) / static_cast<double>(spec_.shots);
        }
        return Prediction::from_p1(
            detail::readout_p1(empirical, spec_.readout));
      }
      case Architecture::EQNN: {
        const std::vector<double> z = expectation_z_each(state);
        const std::size_t w0 = static_cast<std::size_t>(ansatz_count_);
        double t = params[w0 + z.size()];  // bias
        for (std::size_t q = 0; q < z.size(); ++q) {
          t += params[w0 + q] * z[q];
        }
        return Prediction::from_p1(detail::sigmoid(t));
      }
    }
    throw std::logic_error("CompiledModel::predict: unreachable");
  }

 private:
  void check_lengths(std::span<const double> params,
                     std::span<const double> x) const {
    if (static_cast<int>(params.size()) != parameter_count()) {
      throw std::invalid_argument(
          "model: expected " + std::to_string(parameter_count()) +
          " parameters, got " + std::to_string(params.size()));
    }
    if (static_cast<int>(x.size()) != n_features_) {
      throw std::invalid_argument("model: expected " +
                                  std::to_string(n_features_) +
                                  " features, got " + std::to_string(x.size()));
    }
  }

  ModelSpec spec_;
  ParamCircuit circuit_;
  int n_features_ = 0;
  int ansatz_count_ = 0;
};

inline Prediction vqc_forward(const ModelSpec& spec, const FlatParams& params,
                              std::span<const double> x) {
  if (spec.architecture != Architecture::VQC) {
    throw std::invalid_argument("vqc_forward: spec architecture is not VQC");
  }
  return CompiledModel(spec).predict(params.values, x);
}

inline Prediction sqnn_forward(const ModelSpec& spec, const FlatParams& params,
                               std::span<const double> x, std::uint64_t seed) {
  if (spec.architecture != Architecture::SQNN) {
    throw std::invalid_argument("sqnn_forward: spec architecture is not SQNN");
  }
  return CompiledModel(spec).predict(params.values, x, seed);
}

inline Prediction eqnn_forward(const ModelSpec& spec, const FlatParams& params,
                               std::span<const double> x) {
  if (spec.architecture != Architecture::EQNN) {
    throw std::invalid_argument("eqnn_forward: spec architecture is not EQNN");
  }
  return CompiledModel(spec).predict(params.values, x);
}

/// Mean binary cross-entropy with probabilities clamped to
/// [1e-12, 1 - 1e-12].
inline double binary_cross_entropy(std::span<const double> p1,
                                   std::span<const int> labels) {
  if (p1.empty()) {
    throw std::invalid_argument("binary_cross_entropy: empty input");
  }
  if (p1.size() != labels.size()) {
    throw std::invalid_argument("binary_cross_entropy: length mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw std::invalid_argument("binary_cross_entropy: label not in {0,1}");
    }
    const double p = std::clamp(p1[i], 1e-12, 1.0 - 1e-12);
    total += labels[i] == 1 ? -std::log(p) : -std::log(1.0 - p);
  }
  return total / static_cast<double>(p1.size());
}

}  // namespace vqcbench
