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

#ifndef VQCBENCH_HARNESS_HPP_
#define VQCBENCH_HARNESS_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "vqcbench/config.hpp"
#include "vqcbench/dataprep.hpp"
#include "vqcbench/metrics.hpp"
#include "vqcbench/models.hpp"
#include "vqcbench/optim.hpp"

namespace vqcbench {

// One completed (or failed) experiment: labels, seeds, history, metrics.
struct RunRecord {
  std::string run_id;
  std::string dataset;
  std::string architecture;
  std::string feature_map;
  std::string ansatz;
  std::uint64_t base_seed = 0;
  std::uint64_t run_seed = 0;
  std::uint64_t ansatz_seed = 0;
  bool ok = false;
  std::string error;
  LossHistory history;
  MetricSet train_metrics;
  MetricSet test_metrics;
  double wall_seconds = 0.0;
  std::map<std::string, std::string> config_echo;
};

namespace detail {

inline std::uint64_t fnv1a_bytes(std::uint64_t hash, const void* data,
                                 std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline std::uint64_t fnv1a_string(std::uint64_t hash, const std::string& s) {
  hash = fnv1a_bytes(hash, s.data(), s.size());
  const unsigned char sep = 0;
  return fnv1a_bytes(hash, &sep, 1);
}

inline std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    hash = fnv1a_bytes(hash, buf, static_cast<std::size_t>(in.gcount()));
  }
  return hash;
}

inline std::string format_fixed(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

inline double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2]
               : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Rank within a canonical name order; unknown names sort after, by name.
inline std::size_t rank_in(const std::vector<std::string>& order,
                           const std::string& name) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == name) return i;
  }
  return order.size();
}

}  // namespace detail

// Per-run seed: a hash of the base seed and the cell labels, so grid
// scheduling and execution order can never perturb a run's randomness.
inline std::uint64_t derive_run_seed(std::uint64_t base_seed,
                                     const std::string& dataset,
                                     const std::string& architecture,
                                     const std::string& feature_map,
                                     const std::string& ansatz) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  hash = detail::fnv1a_bytes(hash, &base_seed, sizeof(base_seed));
  hash = detail::fnv1a_string(hash, dataset);
  hash = detail::fnv1a_string(hash, architecture);
  hash = detail::fnv1a_string(hash, feature_map);
  hash = detail::fnv1a_string(hash, ansatz);
  return hash;
}

inline std::string run_id_for(const ExperimentConfig& cfg,
                              std::uint64_t base_seed) {
  return cfg.dataset + "_" + architecture_name(cfg.architecture) + "_" +
         feature_map_name(cfg.map_kind) + "_" + ansatz_name(cfg.ansatz_kind) +
         "_s" + std::to_string(base_seed);
}

inline std::string label_column_for(const std::string& dataset) {
  return dataset == "banksim" ? "Fraud" : "Class";
}

// Resolves the configured circuits into a ModelSpec with the given shot count.
inline ModelSpec model_spec_from(const ExperimentConfig& cfg,
                                 std::uint64_t ansatz_seed, int shots) {
  ModelSpec spec;
  spec.architecture = cfg.architecture;
  spec.readout = cfg.readout;
  spec.shots = shots;
  spec.feature_map.kind = cfg.map_kind;
  spec.feature_map.n_features = cfg.qubits;
  spec.feature_map.reps = cfg.map_reps;
  spec.feature_map.pauli_strings = cfg.paulis;
  spec.feature_map.entanglement = cfg.map_entanglement;
  spec.ansatz.kind = cfg.ansatz_kind;
  spec.ansatz.n_qubits = cfg.qubits;
  spec.ansatz.reps = cfg.ansatz_reps;
  spec.ansatz.entanglement = cfg.ansatz_entanglement;
  spec.ansatz.seed = ansatz_seed;
  return spec;
}

// Core experiment on already-prepared tables: train, evaluate both splits,
// and fill the record.  Does not touch the filesystem.
inline RunRecord run_experiment(const ExperimentConfig& cfg,
                                std::uint64_t base_seed,
                                const DataTable& train_table,
                                const DataTable& test_table) {
  RunRecord rec;
  rec.dataset = cfg.dataset;
  rec.architecture = architecture_name(cfg.architecture);
  rec.feature_map = feature_map_name(cfg.map_kind);
  rec.ansatz = ansatz_name(cfg.ansatz_kind);
  rec.base_seed = base_seed;
  rec.run_id = run_id_for(cfg, base_seed);
  rec.run_seed = derive_run_seed(base_seed, rec.dataset, rec.architecture,
                                 rec.feature_map, rec.ansatz);
  rec.ansatz_seed = cfg.ansatz_seed >= 0
                        ? static_cast<std::uint64_t>(cfg.ansatz_seed)
                        : detail::mix_seed(rec.run_seed, 0xA5);
  rec.config_echo = config_to_map(cfg);

  const auto features = train_table.feature_indices();
  if (static_cast<int>(features.size()) != cfg.qubits) {
    throw DataError("prepared table has " + std::to_string(features.size()) +
                    " features but config expects qubits=" +
                    std::to_string(cfg.qubits));
  }
  if (test_table.column_names != train_table.column_names) {
    throw DataError("train/test column mismatch for dataset " + cfg.dataset);
  }

  const auto start = std::chrono::steady_clock::now();

  const ModelSpec train_spec =
      model_spec_from(cfg, rec.ansatz_seed, cfg.train_shots);
  OptimizerConfig opt = cfg.optimizer;
  opt.seed = rec.run_seed;
  auto [params, history] = train(train_spec, train_table, opt);
  rec.history = std::move(history);

  const ModelSpec eval_spec =
      model_spec_from(cfg, rec.ansatz_seed, cfg.shots);
  const CompiledModel compiled(eval_spec);
  const auto evaluate = [&](const DataTable& table, std::uint64_t block) {
    std::vector<int> y_true, y_pred;
    y_true.reserve(table.n_rows());
    y_pred.reserve(table.n_rows());
    std::vector<double> x(features.size());
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
      for (std::size_t c = 0; c < features.size(); ++c) {
        x[c] = table.rows[r][features[c]];
      }
      const std::uint64_t seed =
          detail::mix_seed(detail::mix_seed(rec.run_seed, block), r);
      y_pred.push_back(compiled.predict(params.values, x, seed).label);
      y_true.push_back(table.label_of(r));
    }
    return compute_metrics(y_true, y_pred);
  };
  rec.train_metrics = evaluate(train_table, 1);
  rec.test_metrics = evaluate(test_table, 2);

  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  rec.ok = true;
  return rec;
}

// ---------------------------------------------------------------------------
// Record persistence (JSON) and loss histories (CSV).

inline nlohmann::json metrics_to_json(const MetricSet& m) {
  return {{"tp", m.tp},           {"fp", m.fp},
          {"tn", m.tn},           {"fn", m.fn},
          {"accuracy", m.accuracy}, {"precision", m.precision},
          {"recall", m.recall},   {"f1", m.f1}};
}

inline MetricSet metrics_from_json(const nlohmann::json& j) {
  MetricSet m;
  m.tp = j.at("tp").get<std::int64_t>();
  m.fp = j.at("fp").get<std::int64_t>();
  m.tn = j.at("tn").get<std::int64_t>();
  m.fn = j.at("fn").get<std::int64_t>();
  m.accuracy = j.at("accuracy").get<double>();
  m.precision = j.at("precision").get<double>();
  m.recall = j.at("recall").get<double>();
  m.f1 = j.at("f1").get<double>();
  return m;
}

inline void write_record_json(const RunRecord& rec, const std::string& path) {
  nlohmann::json j;
  j["run_id"] = rec.run_id;
  j["dataset"] = rec.dataset;
  j["architecture"] = rec.architecture;
  j["feature_map"] = rec.feature_map;
  j["ansatz"] = rec.ansatz;
  j["base_seed"] = rec.base_seed;
  j["run_seed"] = rec.run_seed;
  j["ansatz_seed"] = rec.ansatz_seed;
  j["ok"] = rec.ok;
  j["error"] = rec.error;
  j["wall_seconds"] = rec.wall_seconds;
  j["config"] = rec.config_echo;
  j["train_metrics"] = metrics_to_json(rec.train_metrics);
  j["test_metrics"] = metrics_to_json(rec.test_metrics);
  nlohmann::json history = nlohmann::json::array();
  for (const auto& [index, loss] : rec.history.entries) {
    history.push_back({index, loss});
  }
  j["history"] = std::move(history);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

inline RunRecord read_record_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open record '" + path + "'");
  nlohmann::json j;
  in >> j;
  RunRecord rec;
  rec.run_id = j.at("run_id").get<std::string>();
  rec.dataset = j.at("dataset").get<std::string>();
  rec.architecture = j.at("architecture").get<std::string>();
  rec.feature_map = j.at("feature_map").get<std::string>();
  rec.ansatz = j.at("ansatz").get<std::string>();
  rec.base_seed = j.at("base_seed").get<std::uint64_t>();
  rec.run_seed = j.at("run_seed").get<std::uint64_t>();
  rec.ansatz_seed = j.at("ansatz_seed").get<std::uint64_t>();
  rec.ok = j.at("ok").get<bool>();
  rec.error = j.at("error").get<std::string>();
  rec.wall_seconds = j.at("wall_seconds").get<double>();
  if (j.contains("config")) {
    rec.config_echo =
        j.at("config").get<std::map<std::string, std::string>>();
  }
  rec.train_metrics = metrics_from_json(j.at("train_metrics"));
  rec.test_metrics = metrics_from_json(j.at("test_metrics"));
  for (const auto& entry : j.at("history")) {
    rec.history.entries.emplace_back(entry.at(0).get<int>(),
                                     entry.at(1).get<double>());
  }
  return rec;
}

inline void persist_record(const RunRecord& rec, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir / "records");
  write_record_json(rec, (dir / "records" / (rec.run_id + ".json")).string());
  if (rec.ok) {
    write_loss_history_csv(rec.history,
                           (dir / ("loss_" + rec.run_id + ".csv")).string());
  }
}

// Runs one experiment against the prepared CSVs in cfg.data_dir and persists
// the record (JSON) and loss history (CSV) under cfg.out_dir.
inline RunRecord run_experiment(const ExperimentConfig& cfg,
                                std::uint64_t base_seed) {
  const std::filesystem::path data(cfg.data_dir);
  const std::string train_path =
      (data / (cfg.dataset + "_train.csv")).string();
  const std::string test_path = (data / (cfg.dataset + "_test.csv")).string();
  if (!std::filesystem::exists(train_path) ||
      !std::filesystem::exists(test_path)) {
    throw DataError("prepared files for dataset '" + cfg.dataset +
                    "' not found under '" + cfg.data_dir +
                    "'; run the preprocess subcommand first");
  }
  const std::string label = label_column_for(cfg.dataset);
  DataTable train_table, test_table;
  try {
    train_table = read_table_csv(train_path, label);
    test_table = read_table_csv(test_path, label);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
  const RunRecord rec =
      run_experiment(cfg, base_seed, train_table, test_table);
  persist_record(rec, cfg.out_dir);
  return rec;
}

// Full factorial sweep over the configured dataset/architecture/map/ansatz
// lists and seeds.  Per-run failures become error records; the sweep always
// completes.  Record order is the iteration order regardless of workers.
inline std::vector<RunRecord> run_grid(const ExperimentConfig& base_cfg,
                                       int workers = 1) {
  struct Job {
    std::string dataset, architecture, feature_map, ansatz;
    std::uint64_t base_seed;
  };
  std::vector<Job> jobs;
  for (const std::string& ds : base_cfg.grid_datasets) {
    for (const std::string& arch : base_cfg.grid_architectures) {
      for (const std::string& fm : base_cfg.grid_feature_maps) {
        for (const std::string& an : base_cfg.grid_ansatze) {
          for (std::uint64_t seed : base_cfg.resolved_seeds()) {
            jobs.push_back({ds, arch, fm, an, seed});
          }
        }
      }
    }
  }

  std::vector<RunRecord> records(jobs.size());
  const auto run_one = [&](std::size_t i) {
    const Job& job = jobs[i];
    RunRecord rec;
    rec.dataset = job.dataset;
    rec.architecture = job.architecture;
    rec.feature_map = job.feature_map;
    rec.ansatz = job.ansatz;
    rec.base_seed = job.base_seed;
    rec.run_id = job.dataset + "_" + job.architecture + "_" + job.feature_map +
                 "_" + job.ansatz + "_s" + std::to_string(job.base_seed);
    try {
      ExperimentConfig cfg = base_cfg;
      cfg.dataset = job.dataset;
      cfg.architecture = architecture_from_name(job.architecture);
      cfg.map_kind = feature_map_kind_from_name(job.feature_map);
      cfg.ansatz_kind = ansatz_kind_from_name(job.ansatz);
      rec = run_experiment(cfg, job.base_seed);
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
      try {
        persist_record(rec, base_cfg.out_dir);
      } catch (const std::exception&) {
        // Persisting the failure is best-effort; the record survives in RAM.
      }
    }
    records[i] = std::move(rec);
  };

  const int usable =
      std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  if (usable <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(usable));
    for (int w = 0; w < usable; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= jobs.size()) return;
          run_one(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  return records;
}

// ---------------------------------------------------------------------------
// Reports: summary.csv, aligned text tables, per-run loss CSVs.

namespace detail {

struct CellKey {
  std::string architecture, feature_map, ansatz, dataset;
  bool operator==(const CellKey&) const = default;
};

inline std::vector<std::size_t> canonical_order(
    const std::vector<RunRecord>& records) {
  const std::vector<std::string> datasets{"banksim", "european"};
  const std::vector<std::string> architectures{"vqc", "sqnn", "eqnn"};
  const std::vector<std::string> maps{"z", "zz", "pauli"};
  const std::vector<std::string> ansatze{"real_amplitudes", "efficient_su2",
                                         "two_local", "pauli_two_design"};
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const RunRecord& ra = records[a];
    const RunRecord& rb = records[b];
    const auto key = [&](const RunRecord& r) {
      return std::make_tuple(rank_in(datasets, r.dataset), r.dataset,
                             rank_in(architectures, r.architecture),
                             r.architecture, rank_in(maps, r.feature_map),
                             r.feature_map, rank_in(ansatze, r.ansatz),
                             r.ansatz, r.base_seed);
    };
    return key(ra) < key(rb);
  });
  return order;
}

}  // namespace detail

// Emits summary.csv (one row per configuration cell, test-metric medians
// across seeds, 4 decimals), an aligned text table per (model, dataset)
// pair (2 decimals), one loss CSV per successful record, and failures.txt
// when any run failed.  Output is byte-stable for identical records.
inline void write_reports(const std::vector<RunRecord>& records,
                          const std::string& out_dir) {
  if (records.empty()) {
    throw std::invalid_argument("write_reports: no records");
  }
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  const std::vector<std::size_t> order = detail::canonical_order(records);

  // Group successful records into cells, keeping canonical order.
  std::vector<detail::CellKey> cell_keys;
  std::vector<std::vector<const RunRecord*>> cells;
  for (std::size_t i : order) {
    const RunRecord& rec = records[i];
    if (!rec.ok) continue;
    const detail::CellKey key{rec.architecture, rec.feature_map, rec.ansatz,
                              rec.dataset};
    const auto it = std::find(cell_keys.begin(), cell_keys.end(), key);
    if (it == cell_keys.end()) {
      cell_keys.push_back(key);
      cells.push_back({&rec});
    } else {
      cells[static_cast<std::size_t>(it - cell_keys.begin())].push_back(&rec);
    }
  }

  const auto median_metrics = [](const std::vector<const RunRecord*>& runs) {
    std::vector<double> acc, prec, rec_, f1;
    for (const RunRecord* r : runs) {
      acc.push_back(r->test_metrics.accuracy);
      prec.push_back(r->test_metrics.precision);
      rec_.push_back(r->test_metrics.recall);
      f1.push_back(r->test_metrics.f1);
    }
    return std::array<double, 4>{detail::median(acc), detail::median(prec),
                                 detail::median(rec_), detail::median(f1)};
  };

  {
    std::ofstream out(dir / "summary.csv");
    if (!out) throw std::runtime_error("cannot write summary.csv");
    out << "model,feature_map,ansatz,dataset,accuracy,precision,recall,f1\n";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto m = median_metrics(cells[c]);
      out << cell_keys[c].architecture << ',' << cell_keys[c].feature_map
          << ',' << cell_keys[c].ansatz << ',' << cell_keys[c].dataset << ','
          << detail::format_fixed(m[0], 4) << ','
          << detail::format_fixed(m[1], 4) << ','
          << detail::format_fixed(m[2], 4) << ','
          << detail::format_fixed(m[3], 4) << '\n';
    }
  }

  // Aligned text table per (model, dataset), grouped by feature map.
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const std::pair<std::string, std::string> p{cell_keys[c].architecture,
                                                cell_keys[c].dataset};
    if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) {
      pairs.push_back(p);
    }
  }
  for (const auto& [arch, dataset] : pairs) {
    std::size_t max_seeds = 1;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cell_keys[c].architecture == arch &&
          cell_keys[c].dataset == dataset) {
        max_seeds = std::max(max_seeds, cells[c].size());
      }
    }
    std::ofstream out(dir / ("table_" + arch + "_" + dataset + ".txt"));
    if (!out) throw std::runtime_error("cannot write report table");
    out << "Model: " << arch << "    Dataset: " << dataset;
    if (max_seeds > 1) {
      out << "    (median of " << max_seeds
          << " seeds; multi-seed aggregation is an artifact addition)";
    }
    out << "\n\n";
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s  %-18s  %8s  %9s  %6s  %6s\n",
                  "Feature map", "Ansatz", "Accuracy", "Precision", "Recall",
                  "F1");
    out << line
        << "------------  ------------------  --------  ---------  ------  "
           "------\n";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cell_keys[c].architecture != arch ||
          cell_keys[c].dataset != dataset) {
        continue;
      }
      const auto m = median_metrics(cells[c]);
      std::snprintf(line, sizeof(line),
                    "%-12s  %-18s  %8.2f  %9.2f  %6.2f  %6.2f\n",
                    cell_keys[c].feature_map.c_str(),
                    cell_keys[c].ansatz.c_str(), m[0], m[1], m[2], m[3]);
      out << line;
    }
  }

  for (std::size_t i : order) {
    const RunRecord& rec = records[i];
    if (!rec.ok) continue;
    write_loss_history_csv(
        rec.history, (dir / ("loss_" + rec.run_id + ".csv")).string());
  }

  std::vector<const RunRecord*> failures;
  for (std::size_t i : order) {
    if (!records[i].ok) failures.push_back(&records[i]);
  }
  if (!failures.empty()) {
    std::ofstream out(dir / "failures.txt");
    for (const RunRecord* rec : failures) {
      out << rec->run_id << ": " << rec->error << '\n';
    }
  }
}

// Reads every record JSON under <in_dir>/records (falling back to <in_dir>
// itself), in sorted filename order.
inline std::vector<RunRecord> read_records_dir(const std::string& in_dir) {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(in_dir) / "records";
  if (!fs::is_directory(dir)) dir = in_dir;
  if (!fs::is_directory(dir)) {
    throw DataError("no records directory at '" + in_dir + "'");
  }
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<RunRecord> records;
  records.reserve(files.size());
  for (const std::string& f : files) records.push_back(read_record_json(f));
  return records;
}

// ---------------------------------------------------------------------------
// Preprocessing: raw CSV -> balanced, reduced, split, scaled table files.

// Applies the preparation pipeline (clean -> undersample -> PCA for the
// 30-feature dataset -> stratified 80/20 split -> min-max scale fitted on
// train) and writes <dataset>_{train,test}.csv plus sidecar state files and
// a meta file with a content hash.
inline void preprocess_dataset(const std::string& dataset,
                               const std::string& input_csv,
                               std::uint64_t seed,
                               const std::string& out_dir) {
  if (dataset != "banksim" && dataset != "european") {
    throw ConfigError("unknown dataset '" + dataset + "'");
  }
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  std::vector<OrdinalMapping> mappings;
  DataTable table = dataset == "banksim"
                        ? load_banksim(input_csv, &mappings)
                        : load_european(input_csv);
  table = undersample_balanced(table, detail::mix_seed(seed, 1));

  bool has_pca = false;
  PcaState pca;
  if (dataset == "european") {
    auto [reduced, state] = pca_fit_transform(table, 7);
    table = std::move(reduced);
    pca = std::move(state);
    has_pca = true;
  }

  auto [train_table, test_table] =
      split_train_test(table, 0.2, detail::mix_seed(seed, 2));
  const ScalerState scaler = minmax_fit(train_table);
  const DataTable strain = minmax_apply(scaler, train_table);
  const DataTable stest = minmax_apply(scaler, test_table);

  const std::string train_path = (dir / (dataset + "_train.csv")).string();
  const std::string test_path = (dir / (dataset + "_test.csv")).string();
  write_table_csv(strain, train_path);
  write_table_csv(stest, test_path);
  write_scaler_state(scaler, (dir / (dataset + "_scaler.txt")).string());
  if (has_pca) {
    write_pca_state(pca, (dir / (dataset + "_pca.txt")).string());
  }
  for (const OrdinalMapping& m : mappings) {
    std::string column = m.column;
    for (char& c : column) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    write_mapping_csv(
        m, (dir / (dataset + "_mapping_" + column + ".csv")).string());
  }

  std::ofstream meta(dir / (dataset + "_meta.txt"));
  if (!meta) throw std::runtime_error("cannot write meta file");
  meta << "dataset=" << dataset << '\n'
       << "seed=" << seed << '\n'
       << "pipeline=clean>undersample>"
       << (has_pca ? "pca7>" : "") << "split80_20>minmax_scale\n"
       << "rows_train=" << strain.n_rows() << '\n'
       << "rows_test=" << stest.n_rows() << '\n'
       << "content_hash="
       << detail::mix_seed(detail::fnv1a_file(train_path),
                           detail::fnv1a_file(test_path))
       << '\n';
}

}  // namespace vqcbench

#endif  // VQCBENCH_HARNESS_HPP_
