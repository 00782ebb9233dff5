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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "vqcbench/featuremaps.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

using namespace vqcbench;
using test_support::to_eigen;

namespace {

double unitary_fidelity(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

/// One evolution term of the reference construction.
struct MapTerm {
  std::vector<int> subset;
  std::string axes;  // one axis character per subset entry
};

std::vector<std::pair<int, int>> reference_pairs(const FeatureMapSpec& spec) {
  std::vector<std::pair<int, int>> pairs;
  if (spec.entanglement == Entanglement::Linear) {
    for (int q = 0; q + 1 < spec.n_features; ++q) pairs.emplace_back(q, q + 1);
  } else {
    for (int i = 0; i < spec.n_features; ++i) {
      for (int j = i + 1; j < spec.n_features; ++j) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

/// The per-repetition term sequence each map kind is defined to produce.
std::vector<MapTerm> reference_terms(const FeatureMapSpec& spec) {
  std::vector<MapTerm> terms;
  const auto singletons = [&](char axis) {
    for (int q = 0; q < spec.n_features; ++q) {
      terms.push_back({{q}, std::string(1, axis)});
    }
  };
  const auto pairs = [&](char a, char b) {
    for (const auto& [i, j] : reference_pairs(spec)) {
      terms.push_back({{i, j}, std::string{a, b}});
    }
  };
  switch (spec.kind) {
    case FeatureMapKind::Z:
      singletons('Z');
      break;
    case FeatureMapKind::ZZ:
      singletons('Z');
      pairs('Z', 'Z');
      break;
    case FeatureMapKind::Pauli:
      for (const std::string& label : spec.pauli_strings) {
        if (label.size() == 1) {
          singletons(label[0]);
        } else {
          pairs(label[0], label[1]);
        }
      }
      break;
  }
  return terms;
}

double reference_phi(const MapTerm& term, const std::vector<double>& x) {
  if (term.subset.size() == 1) {
    return x[static_cast<std::size_t>(term.subset[0])];
  }
  double product = 1.0;
  for (int j : term.subset) product *= M_PI - x[static_cast<std::size_t>(j)];
  return product;
}

/// Layered reference unitary: per rep, an H layer then exp(i*phi_S*P_S) per
/// term, multiplied in application order.
oracles::Matrix map_oracle(const FeatureMapSpec& spec,
                           const std::vector<double>& x) {
  const int n = spec.n_features;
  const Eigen::Index dim = Eigen::Index(1) << n;
  oracles::Matrix h_layer = oracles::Matrix::Identity(dim, dim);
  for (int q = 0; q < n; ++q) {
    h_layer = oracles::embed_1q(oracles::mat_h(), q, n) * h_layer;
  }
  oracles::Matrix u = oracles::Matrix::Identity(dim, dim);
  for (int rep = 0; rep < spec.reps; ++rep) {
    u = h_layer * u;
    for (const MapTerm& term : reference_terms(spec)) {
      std::vector<char> labels(static_cast<std::size_t>(n), 'I');
      for (std::size_t k = 0; k < term.subset.size(); ++k) {
        labels[static_cast<std::size_t>(term.subset[k])] = term.axes[k];
      }
      u = oracles::pauli_exponential(labels, reference_phi(term, x)) * u;
    }
  }
  return u;
}

ParamCircuit bound_map(const FeatureMapSpec& spec,
                       const std::vector<double>& x) {
  return bind_parameters(build_feature_map(spec), std::span<const double>(x));
}

std::vector<double> random_features(int n, std::mt19937_64& rng) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& v : x) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return x;
}

int count_ops(const ParamCircuit& circ, GateKind kind) {
  int count = 0;
  for (const CircuitOp& op : circ.ops()) count += op.gate.kind == kind;
  return count;
}

int count_two_qubit_ops(const ParamCircuit& circ) {
  int count = 0;
  for (const CircuitOp& op : circ.ops()) count += gate_arity(op.gate.kind) == 2;
  return count;
}

int count_symbolic_ops(const ParamCircuit& circ) {
  int count = 0;
  for (const CircuitOp& op : circ.ops()) count += op.is_symbolic();
  return count;
}

}  // namespace

TEST_CASE("data mapping function", "[featuremaps]") {
  const std::vector<double> x{0.1, 0.2, 0.3};
  CHECK(data_map_phi({2}, x) == 0.3);
  const std::vector<double> pis{M_PI, M_PI};
  CHECK(data_map_phi({0, 1}, pis) == Catch::Approx(0.0).margin(1e-15));
  const std::vector<double> zeros(7, 0.0);
  CHECK(data_map_phi({0, 1, 2, 3, 4, 5, 6}, zeros) ==
        Catch::Approx(std::pow(M_PI, 7)));
  CHECK_THROWS_AS(data_map_phi({}, x), std::invalid_argument);
  CHECK_THROWS_AS(data_map_phi({3}, x), std::invalid_argument);

  SECTION("symbolic form agrees with the numeric form") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const std::vector<double> v = random_features(4, rng);
      for (const std::vector<int>& subset :
           {std::vector<int>{1}, {0, 2}, {1, 2, 3}}) {
        CHECK(data_map_phi_expr(subset).evaluate(v) ==
              Catch::Approx(data_map_phi(subset, v)).margin(1e-14));
      }
    }
  }
}

TEST_CASE("Z map structure", "[featuremaps]") {
  FeatureMapSpec spec;
  spec.kind = FeatureMapKind::Z;
  spec.n_features = 2;

  SECTION("zero features give the uniform superposition") {
    const StateVector s = simulate(bound_map(spec, {0.0, 0.0}));
    for (double p : probabilities(s).probabilities) {
      CHECK(p == Catch::Approx(0.25).margin(1e-12));
    }
  }
  SECTION("contains no two-qubit gates") {
    CHECK(count_two_qubit_ops(build_z_map(spec)) == 0);
  }
  SECTION("gate counts follow the construction rule") {
    FeatureMapSpec big = spec;
    big.n_features = 3;
    big.reps = 2;
    const ParamCircuit circ = build_z_map(big);
    CHECK(count_ops(circ, GateKind::H) == 6);
    CHECK(count_symbolic_ops(circ) == 6);
  }
  SECTION("spec kind and size are validated") {
    CHECK_THROWS_AS(build_zz_map(spec), std::invalid_argument);
    FeatureMapSpec bad = spec;
    bad.n_features = 0;
    CHECK_THROWS_AS(build_z_map(bad), std::invalid_argument);
    bad = spec;
    bad.reps = 0;
    CHECK_THROWS_AS(build_z_map(bad), std::invalid_argument);
    bad = spec;
    bad.entanglement = Entanglement::Circular;
    CHECK_THROWS_AS(build_z_map(bad), std::invalid_argument);
  }
}

TEST_CASE("ZZ map structure", "[featuremaps]") {
  FeatureMapSpec spec;
  spec.kind = FeatureMapKind::ZZ;
  spec.n_features = 2;

  SECTION("pair term vanishes at x = (pi, pi)") {
    const Eigen::MatrixXcd u = to_unitary(bound_map(spec, {M_PI, M_PI}));
    // Reference without the pair term = plain Z map at the same x.
    FeatureMapSpec zspec = spec;
    zspec.kind = FeatureMapKind::Z;
    const oracles::Matrix expected = map_oracle(zspec, {M_PI, M_PI});
    CHECK(unitary_fidelity(u, expected) >= 1.0 - 1e-9);
  }
  SECTION("pair gadget counts follow the entanglement set") {
    CHECK(count_ops(build_zz_map(spec), GateKind::CX) == 2);  // 1 gadget
    FeatureMapSpec four = spec;
    four.n_features = 4;
    CHECK(count_ops(build_zz_map(four), GateKind::CX) == 12);  // C(4,2) gadgets
    four.entanglement = Entanglement::Linear;
    CHECK(count_ops(build_zz_map(four), GateKind::CX) == 6);  // 3 gadgets
  }
  SECTION("pair rotation magnitude at x = 0 is 2*pi^2") {
    const ParamCircuit bound = bound_map(spec, {0.0, 0.0});
    bool found = false;
    for (const CircuitOp& op : bound.ops()) {
      if (op.gate.kind == GateKind::RZ &&
          std::abs(std::abs(*op.gate.angle) - 2.0 * M_PI * M_PI) < 1e-12) {
        found = true;
      }
    }
    CHECK(found);
  }
  SECTION("requires at least two features") {
    FeatureMapSpec one = spec;
    one.n_features = 1;
    CHECK_THROWS_AS(build_zz_map(one), std::invalid_argument);
  }
}

TEST_CASE("Pauli map structure", "[featuremaps]") {
  FeatureMapSpec spec;
  spec.kind = FeatureMapKind::Pauli;
  spec.n_features = 2;

  SECTION("labels Z,ZZ reproduce the ZZ map exactly") {
    spec.pauli_strings = {"Z", "ZZ"};
    FeatureMapSpec zz = spec;
    zz.kind = FeatureMapKind::ZZ;
    CHECK(dump_circuit(build_pauli_map(spec)) ==
          dump_circuit(build_zz_map(zz)));
  }
  SECTION("label Z reproduces the Z map exactly") {
    spec.pauli_strings = {"Z"};
    FeatureMapSpec z = spec;
    z.kind = FeatureMapKind::Z;
    CHECK(dump_circuit(build_pauli_map(spec)) == dump_circuit(build_z_map(z)));
  }
  SECTION("single Y label encodes exp(i*x*Y)") {
    spec.n_features = 1;
    spec.pauli_strings = {"Y"};
    const ParamCircuit bound = bound_map(spec, {0.4});
    // Full map = H layer then the evolution; compare against the layered
    // reference, and the evolution portion alone against exp(i*0.4*Y).
    CHECK(unitary_fidelity(to_unitary(bound), map_oracle(spec, {0.4})) >=
          1.0 - 1e-9);
    ParamCircuit evolution(1);
    for (std::size_t k = 1; k < bound.ops().size(); ++k) {
      evolution.append_raw(bound.ops()[k]);
    }
    CHECK(unitary_fidelity(to_unitary(evolution),
                           oracles::pauli_exponential({'Y'}, 0.4)) >=
          1.0 - 1e-9);
  }
  SECTION("default label set is Z, Y, ZZ") {
    CHECK(FeatureMapSpec{}.pauli_strings ==
          std::vector<std::string>{"Z", "Y", "ZZ"});
  }
  SECTION("invalid labels are rejected") {
    spec.pauli_strings = {"Q"};
    CHECK_THROWS_AS(build_pauli_map(spec), std::invalid_argument);
    spec.pauli_strings = {"XYZ"};
    CHECK_THROWS_AS(build_pauli_map(spec), std::invalid_argument);
    spec.pauli_strings = {};
    CHECK_THROWS_AS(build_pauli_map(spec), std::invalid_argument);
    spec.pauli_strings = {""};
    CHECK_THROWS_AS(build_pauli_map(spec), std::invalid_argument);
  }
}

TEST_CASE("every map matches the layered exponential reference",
          "[featuremaps]") {
  std::mt19937_64 rng(404);
  for (int n : {2, 3}) {
    for (FeatureMapKind kind :
         {FeatureMapKind::Z, FeatureMapKind::ZZ, FeatureMapKind::Pauli}) {
      FeatureMapSpec spec;
      spec.kind = kind;
      spec.n_features = n;
      for (int trial = 0; trial < 5; ++trial) {
        const std::vector<double> x = random_features(n, rng);
        const Eigen::MatrixXcd u = to_unitary(bound_map(spec, x));
        const double f = unitary_fidelity(u, map_oracle(spec, x));
        INFO("kind " << feature_map_name(kind) << " n " << n);
        CHECK(f >= 1.0 - 1e-9);
      }
    }
  }
  SECTION("two repetitions also match") {
    FeatureMapSpec spec;
    spec.kind = FeatureMapKind::ZZ;
    spec.n_features = 2;
    spec.reps = 2;
    const std::vector<double> x{0.3, 0.8};
    CHECK(unitary_fidelity(to_unitary(bound_map(spec, x)),
                           map_oracle(spec, x)) >= 1.0 - 1e-9);
  }
}

TEST_CASE("encoding is deterministic and uses every feature",
          "[featuremaps]") {
  FeatureMapSpec spec;
  spec.kind = FeatureMapKind::ZZ;
  spec.n_features = 3;
  const std::vector<double> x{0.31, 0.47, 0.59};

  SECTION("same spec and x give identical circuits and states") {
    const ParamCircuit a = bound_map(spec, x);
    const ParamCircuit b = bound_map(spec, x);
    CHECK(dump_circuit(a) == dump_circuit(b));
    const StateVector sa = simulate(a);
    const StateVector sb = simulate(b);
    for (std::size_t i = 0; i < sa.dim(); ++i) {
      CHECK(sa.amplitudes[i] == sb.amplitudes[i]);
    }
  }
  SECTION("perturbing any single coordinate moves the state") {
    const Eigen::VectorXcd base = to_eigen(simulate(bound_map(spec, x)));
    for (std::size_t k = 0; k < x.size(); ++k) {
      std::vector<double> moved = x;
      moved[k] += 0.21;
      const Eigen::VectorXcd other =
          to_eigen(simulate(bound_map(spec, moved)));
      CHECK(oracles::fidelity(base, other) < 1.0 - 1e-6);
    }
  }
}
