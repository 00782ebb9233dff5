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

#ifndef VQCBENCH_METRICS_HPP_
#define VQCBENCH_METRICS_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace vqcbench {

// Binary classification counts and the derived rates; class 1 is positive.
struct MetricSet {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Exact confusion-matrix arithmetic; zero denominators yield 0 by convention.
inline MetricSet compute_metrics(const std::vector<int>& true_labels,
                                 const std::vector<int>& predicted_labels) {
  if (true_labels.empty() || true_labels.size() != predicted_labels.size()) {
    throw std::invalid_argument(
        "metrics: label vectors must be nonempty and equal length");
  }
  MetricSet m;
  for (std::size_t i = 0; i < true_labels.size(); ++i) {
    const int y = true_labels[i];
    const int p = predicted_labels[i];
    if ((y != 0 && y != 1) || (p != 0 && p != 1)) {
      throw std::invalid_argument("metrics: labels must be 0 or 1");
    }
    if (y == 1) {
      (p == 1 ? m.tp : m.fn) += 1;
    } else {
      (p == 1 ? m.fp : m.tn) += 1;
    }
  }
  const double n = static_cast<double>(true_labels.size());
  m.accuracy = static_cast<double>(m.tp + m.tn) / n;
  m.precision =
      m.tp + m.fp > 0 ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp) : 0.0;
  m.recall =
      m.tp + m.fn > 0 ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn) : 0.0;
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

}  // namespace vqcbench

#endif  // VQCBENCH_METRICS_HPP_
