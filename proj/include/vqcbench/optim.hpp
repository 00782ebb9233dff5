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

#ifndef VQCBENCH_OPTIM_HPP_
#define VQCBENCH_OPTIM_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vqcbench/dataprep.hpp"
#include "vqcbench/models.hpp"

namespace vqcbench {

// Budget and trust-region schedule for the derivative-free minimizer.
struct OptimizerConfig {
  int max_evals = 350;
  double rho_begin = 1.0;
  double rho_end = 1e-4;
  std::uint64_t seed = 0;  // drives the initial-point draw in train()
};

// Every objective evaluation, in order: (1-based evaluation index, loss).
struct LossHistory {
  std::vector<std::pair<int, double>> entries;
};

struct OptimResult {
  std::vector<double> x_best;
  double f_best = std::numeric_limits<double>::infinity();
  LossHistory history;
};

inline void validate_optimizer_config(const OptimizerConfig& cfg) {
  if (!(cfg.rho_end > 0.0 && cfg.rho_begin > cfg.rho_end)) {
    throw std::invalid_argument(
        "optimizer: need 0 < rho_end < rho_begin, got rho_begin=" +
        std::to_string(cfg.rho_begin) + " rho_end=" +
        std::to_string(cfg.rho_end));
  }
  if (cfg.max_evals < 1) {
    throw std::invalid_argument("optimizer: max_evals must be >= 1");
  }
}

// Trust-region minimization over linear interpolants, in the COBYLA family
// (constraints omitted; the problems here are unconstrained).  A simplex of
// n+1 points carries the model; each step moves the incumbent by rho against
// the interpolant gradient, improvements replace the worst simplex point,
// and two consecutive failures shrink rho and rebuild the simplex around the
// incumbent.  Stops after cfg.max_evals evaluations or once rho < rho_end.
template <typename F>
OptimResult cobyla_minimize(F&& objective, const std::vector<double>& x0,
                            const OptimizerConfig& cfg) {
  validate_optimizer_config(cfg);
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("optimizer: dimension must be >= 1");

  OptimResult result;
  result.x_best = x0;
  int evals = 0;
  const auto eval = [&](const std::vector<double>& x) {
    const double f = objective(std::span<const double>(x));
    ++evals;
    result.history.entries.emplace_back(evals, f);
    if (f < result.f_best) {
      result.f_best = f;
      result.x_best = x;
    }
    return f;
  };

  const double f0 = eval(x0);
  if (!std::isfinite(f0)) {
    throw std::invalid_argument("optimizer: objective not finite at x0");
  }

  double rho = cfg.rho_begin;
  std::vector<std::vector<double>> pts;
  std::vector<double> vals;
  // Axis-aligned simplex of edge rho around the incumbent; false once the
  // evaluation budget runs out mid-build.
  const auto build_simplex = [&]() {
    pts.assign(1, result.x_best);
    vals.assign(1, result.f_best);
    for (std::size_t i = 0; i < n; ++i) {
      if (evals >= cfg.max_evals) return false;
      std::vector<double> p = pts[0];
      p[i] += rho;
      vals.push_back(eval(p));
      pts.push_back(std::move(p));
    }
    return true;
  };

  bool alive = build_simplex();
  int stalls = 0;
  const auto shrink = [&]() {
    rho *= 0.5;
    stalls = 0;
    if (rho >= cfg.rho_end) alive = build_simplex();
  };

  while (alive && evals < cfg.max_evals && rho >= cfg.rho_end) {
    // Gradient of the linear interpolant: (p_i - p_0) . g = f_i - f_0.
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::VectorXd b(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            pts[i + 1][j] - pts[0][j];
      }
      b(static_cast<Eigen::Index>(i)) = vals[i + 1] - vals[0];
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) {
      shrink();  // degenerate simplex: tighten and rebuild
      continue;
    }
    const Eigen::VectorXd g = lu.solve(b);
    const double gnorm = g.norm();
    if (!(gnorm > 1e-14) || !g.allFinite()) {
      shrink();  // flat (or noisy-flat) model: no usable direction
      continue;
    }

    std::vector<double> x_new = result.x_best;
    for (std::size_t j = 0; j < n; ++j) {
      x_new[j] -= rho * g(static_cast<Eigen::Index>(j)) / gnorm;
    }
    const double previous_best = result.f_best;
    const double f_new = eval(x_new);

    std::size_t worst = 0;
    for (std::size_t i = 1; i < vals.size(); ++i) {
      if (vals[i] > vals[worst]) worst = i;
    }
    if (f_new < vals[worst]) {
      pts[worst] = std::move(x_new);
      vals[worst] = f_new;
    }
    if (f_new < previous_best) {
      stalls = 0;
    } else if (++stalls >= 2) {
      shrink();
    }
  }
  return result;
}

// Draws the initial parameter vector: circuit angles uniform in [0,1]; the
// classical head of the hybrid model starts zero-centered in [-0.5, 0.5].
inline FlatParams initial_parameters(const ModelSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const int total = model_parameter_count(spec);
  const int ansatz_count = ansatz_parameter_count(
      spec.ansatz.kind, spec.ansatz.n_qubits, spec.ansatz.reps);
  FlatParams params;
  params.values.reserve(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) {
    params.values.push_back(i < ansatz_count ? unit() : unit() - 0.5);
  }
  return params;
}

namespace detail {

// Splitmix-style mix of the run seed and evaluation counter, so sampled
// (shot-based) objectives stay deterministic per evaluation.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Full-batch training: minimizes binary cross-entropy of the model over the
// table with the trust-region optimizer.  Deterministic for fixed seeds in
// exact mode (shots = 0).
inline std::pair<FlatParams, LossHistory> train(const ModelSpec& spec,
                                                const DataTable& table,
                                                const OptimizerConfig& cfg) {
  validate_model_spec(spec);
  validate_optimizer_config(cfg);
  validate_table(table);
  if (table.n_rows() == 0) {
    throw std::invalid_argument("train: table has no rows");
  }
  const auto features = table.feature_indices();
  if (static_cast<int>(features.size()) != spec.ansatz.n_qubits) {
    throw std::invalid_argument(
        "train: table has " + std::to_string(features.size()) +
        " features but the model encodes " +
        std::to_string(spec.ansatz.n_qubits));
  }

  std::vector<std::vector<double>> x;
  std::vector<int> y;
  x.reserve(table.n_rows());
  y.reserve(table.n_rows());
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    std::vector<double> row;
    row.reserve(features.size());
    for (std::size_t c : features) row.push_back(table.rows[r][c]);
    x.push_back(std::move(row));
    y.push_back(table.label_of(r));
  }

  const CompiledModel compiled(spec);
  std::uint64_t eval_counter = 0;
  const auto objective = [&](std::span<const double> params) {
    const std::uint64_t base = detail::mix_seed(cfg.seed, eval_counter++);
    std::vector<double> p1(x.size());
    for (std::size_t r = 0; r < x.size(); ++r) {
      p1[r] = compiled
                  .predict(params, x[r],
                           detail::mix_seed(base, static_cast<std::uint64_t>(r)))
                  .p1;
    }
    return binary_cross_entropy(p1, y);
  };

  const FlatParams start = initial_parameters(spec, cfg.seed);
  OptimResult result = cobyla_minimize(objective, start.values, cfg);
  return {FlatParams{std::move(result.x_best)}, std::move(result.history)};
}

// Serializes a history as CSV with header `eval,loss`.
inline void write_loss_history_csv(const LossHistory& history,
                                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  std::string buf = "eval,loss\n";
  for (const auto& [index, loss] : history.entries) {
    buf += std::to_string(index);
    buf.push_back(',');
    vqcbench::detail::format_double(buf, loss);
    buf.push_back('\n');
  }
  out << buf;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace vqcbench

#endif  // VQCBENCH_OPTIM_HPP_
