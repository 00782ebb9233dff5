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

#ifndef VQCBENCH_DATAPREP_HPP_
#define VQCBENCH_DATAPREP_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace vqcbench {

// A rectangular numeric table with named columns and a {0,1} label column.
struct DataTable {
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> rows;
  std::string label_column;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return column_names.size(); }

  std::size_t label_index() const {
    for (std::size_t i = 0; i < column_names.size(); ++i) {
      if (column_names[i] == label_column) return i;
    }
    throw std::logic_error("label column '" + label_column +
                           "' not present in table");
  }

  std::vector<std::size_t> feature_indices() const {
    const std::size_t li = label_index();
    std::vector<std::size_t> out;
    out.reserve(column_names.size() - 1);
    for (std::size_t i = 0; i < column_names.size(); ++i) {
      if (i != li) out.push_back(i);
    }
    return out;
  }

  int label_of(std::size_t row) const {
    return static_cast<int>(rows[row][label_index()]);
  }
};

// Per-column min/max captured on the fit table.
struct ScalerState {
  std::vector<std::string> columns;
  std::vector<double> mins;
  std::vector<double> maxs;
};

// Mean vector plus top-k orthonormal component rows over the input columns.
struct PcaState {
  std::vector<std::string> input_columns;
  std::vector<double> means;
  std::vector<std::vector<double>> components;  // k rows of length d
  std::vector<double> explained_variance;      // non-increasing
};

// One ordinally encoded column: raw string -> integer code.
struct OrdinalMapping {
  std::string column;
  std::vector<std::pair<std::string, int>> codes;
};

namespace detail {

inline std::string strip_cell(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  s.erase(0, start);
  if (s.size() >= 2 && ((s.front() == '\'' && s.back() == '\'') ||
                        (s.front() == '"' && s.back() == '"'))) {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

// Splits one CSV line; honors double-quoted fields (no embedded newlines).
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(strip_cell(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(strip_cell(cur));
  return fields;
}

inline double parse_number(const std::string& cell, const std::string& path,
                           std::size_t line_no, const std::string& column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || cell.empty()) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) +
                             ": cannot parse '" + cell + "' in column '" +
                             column + "' as a number");
  }
  return value;
}

inline void require_label_binary(double v, const std::string& path,
                                 std::size_t line_no) {
  if (v != 0.0 && v != 1.0) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) +
                             ": label value must be 0 or 1");
  }
}

// Reads all records of a CSV file as strings; index 0 is the header.
inline std::vector<std::vector<std::string>> read_csv_records(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<std::vector<std::string>> records;
  std::string line;
  while (std::getline(in, line)) {
    if (records.empty() || !line.empty()) records.push_back(split_csv_line(line));
  }
  if (records.empty()) throw std::runtime_error("'" + path + "' is empty");
  return records;
}

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::size_t find_column(const std::vector<std::string>& header,
                               const std::string& name,
                               const std::string& path) {
  const std::string want = lower(name);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (lower(header[i]) == want) return i;
  }
  throw std::runtime_error("'" + path + "': missing column '" + name + "'");
}

// In-place Fisher-Yates shuffle with engine-stable index draws.
template <typename T>
void shuffle_indices(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

inline void format_double(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

}  // namespace detail

// Checks rectangularity, finiteness, and the {0,1} label contract.
inline void validate_table(const DataTable& table) {
  const std::size_t li = table.label_index();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != table.column_names.size()) {
      throw std::invalid_argument("table is not rectangular at row " +
                                  std::to_string(r));
    }
    for (double v : table.rows[r]) {
      if (!std::isfinite(v))
        throw std::invalid_argument("non-finite cell at row " + std::to_string(r));
    }
    const double y = table.rows[r][li];
    if (y != 0.0 && y != 1.0)
      throw std::invalid_argument("label not in {0,1} at row " + std::to_string(r));
  }
}

// Loads the synthetic bank-transaction CSV: strips quotes, extracts the age
// band digit ('U' becomes 7), ordinally encodes the string columns by sorted
// vocabulary, and drops the two constant zipcode columns.  When `mappings`
// is given it receives the vocabulary used for each encoded column.
inline DataTable load_banksim(const std::string& path,
                              std::vector<OrdinalMapping>* mappings = nullptr) {
  const auto records = detail::read_csv_records(path);
  const auto& header = records[0];

  const std::size_t c_step = detail::find_column(header, "step", path);
  const std::size_t c_customer = detail::find_column(header, "customer", path);
  const std::size_t c_age = detail::find_column(header, "age", path);
  const std::size_t c_gender = detail::find_column(header, "gender", path);
  detail::find_column(header, "zipcodeOri", path);  // presence check only
  const std::size_t c_merchant = detail::find_column(header, "merchant", path);
  detail::find_column(header, "zipMerchant", path);  // dropped downstream
  const std::size_t c_category = detail::find_column(header, "category", path);
  const std::size_t c_amount = detail::find_column(header, "amount", path);
  const std::size_t c_fraud = detail::find_column(header, "fraud", path);

  // First pass: collect vocabularies for the ordinally encoded columns.
  const std::vector<std::pair<std::string, std::size_t>> encoded{
      {"Customer", c_customer},
      {"Gender", c_gender},
      {"Merchant", c_merchant},
      {"Category", c_category}};
  std::vector<std::set<std::string>> vocab_sets(encoded.size());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != header.size()) {
      throw std::runtime_error(path + ":" + std::to_string(r + 1) +
                               ": expected " + std::to_string(header.size()) +
                               " fields, got " +
                               std::to_string(records[r].size()));
    }
    for (std::size_t e = 0; e < encoded.size(); ++e) {
      vocab_sets[e].insert(records[r][encoded[e].second]);
    }
  }
  std::vector<std::map<std::string, int>> vocabs(encoded.size());
  for (std::size_t e = 0; e < encoded.size(); ++e) {
    int code = 0;
    for (const std::string& raw : vocab_sets[e]) vocabs[e][raw] = code++;
  }
  if (mappings) {
    mappings->clear();
    for (std::size_t e = 0; e < encoded.size(); ++e) {
      OrdinalMapping m;
      m.column = encoded[e].first;
      for (const auto& [raw, code] : vocabs[e]) m.codes.emplace_back(raw, code);
      mappings->push_back(std::move(m));
    }
  }

  DataTable table;
  table.column_names = {"Step",     "Customer", "Age",    "Gender",
                        "Merchant", "Category", "Amount", "Fraud"};
  table.label_column = "Fraud";
  table.rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const std::size_t line_no = r + 1;
    const auto& rec = records[r];

    // Age: keep the band digit; the unknown marker 'U' takes the next code.
    const std::string& age_cell = rec[c_age];
    double age = -1.0;
    for (char c : age_cell) {
      if (c >= '0' && c <= '9') {
        age = c - '0';
        break;
      }
    }
    if (age < 0.0) {
      if (age_cell.find('U') != std::string::npos ||
          age_cell.find('u') != std::string::npos) {
        age = 7.0;
      } else {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": cannot parse age value '" + age_cell + "'");
      }
    }

    const double fraud = detail::parse_number(rec[c_fraud], path, line_no, "fraud");
    detail::require_label_binary(fraud, path, line_no);

    table.rows.push_back(
        {detail::parse_number(rec[c_step], path, line_no, "step"),
         static_cast<double>(vocabs[0].at(rec[c_customer])), age,
         static_cast<double>(vocabs[1].at(rec[c_gender])),
         static_cast<double>(vocabs[2].at(rec[c_merchant])),
         static_cast<double>(vocabs[3].at(rec[c_category])),
         detail::parse_number(rec[c_amount], path, line_no, "amount"), fraud});
  }
  return table;
}

// Loads the PCA-anonymized card-transaction CSV: Time, V1..V28, Amount
// features plus the Class label, all numeric.
inline DataTable load_european(const std::string& path) {
  const auto records = detail::read_csv_records(path);
  const auto& header = records[0];

  std::vector<std::string> wanted{"Time"};
  for (int i = 1; i <= 28; ++i) wanted.push_back("V" + std::to_string(i));
  wanted.push_back("Amount");
  wanted.push_back("Class");

  std::vector<std::size_t> col_of;
  col_of.reserve(wanted.size());
  for (const std::string& name : wanted) {
    col_of.push_back(detail::find_column(header, name, path));
  }

  DataTable table;
  table.column_names = wanted;
  table.label_column = "Class";
  table.rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const std::size_t line_no = r + 1;
    if (records[r].size() != header.size()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected " + std::to_string(header.size()) +
                               " fields, got " +
                               std::to_string(records[r].size()));
    }
    std::vector<double> row;
    row.reserve(wanted.size());
    for (std::size_t c = 0; c < wanted.size(); ++c) {
      row.push_back(detail::parse_number(records[r][col_of[c]], path, line_no,
                                         wanted[c]));
    }
    detail::require_label_binary(row.back(), path, line_no);
    table.rows.push_back(std::move(row));
  }
  return table;
}

// Keeps every minority-class row, samples the majority class down to match
// without replacement, and shuffles the result.  Deterministic per seed.
inline DataTable undersample_balanced(const DataTable& table,
                                      std::uint64_t seed) {
  validate_table(table);
  std::vector<std::size_t> class0, class1;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    (table.label_of(r) == 1 ? class1 : class0).push_back(r);
  }
  if (class0.empty() || class1.empty()) {
    throw std::invalid_argument("undersampling needs both classes present");
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t>& minority = class1.size() <= class0.size() ? class1 : class0;
  std::vector<std::size_t>& majority = class1.size() <= class0.size() ? class0 : class1;
  detail::shuffle_indices(majority, rng);
  majority.resize(minority.size());

  std::vector<std::size_t> kept;
  kept.reserve(2 * minority.size());
  kept.insert(kept.end(), minority.begin(), minority.end());
  kept.insert(kept.end(), majority.begin(), majority.end());
  detail::shuffle_indices(kept, rng);

  DataTable out;
  out.column_names = table.column_names;
  out.label_column = table.label_column;
  out.rows.reserve(kept.size());
  for (std::size_t r : kept) out.rows.push_back(table.rows[r]);
  return out;
}

// Mean-centers the feature block and projects it onto the top-k eigenvectors
// of its covariance matrix.  Output features are named V1..Vk, highest
// variance first; the label column is carried through unchanged.
inline std::pair<DataTable, PcaState> pca_fit_transform(const DataTable& table,
                                                        int k = 7) {
  validate_table(table);
  const auto features = table.feature_indices();
  const std::size_t d = features.size();
  const std::size_t n = table.n_rows();
  if (k < 1 || static_cast<std::size_t>(k) > d) {
    throw std::invalid_argument("component count " + std::to_string(k) +
                                " exceeds feature count " + std::to_string(d));
  }
  if (n < static_cast<std::size_t>(k) + 1) {
    throw std::invalid_argument("need at least k+1 rows for PCA");
  }

  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          table.rows[r][features[c]];
    }
  }
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  const Eigen::MatrixXd cov =
      (x.transpose() * x) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }

  PcaState state;
  state.input_columns.reserve(d);
  for (std::size_t c : features) state.input_columns.push_back(table.column_names[c]);
  state.means.assign(mean.data(), mean.data() + d);

  // Eigen sorts ascending; take the trailing k in reverse for descending
  // variance, and fix each component's sign by its largest-magnitude entry.
  Eigen::MatrixXd comps(k, static_cast<Eigen::Index>(d));
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd v = solver.eigenvectors().col(static_cast<Eigen::Index>(d) - 1 - i);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v(pivot) < 0.0) v = -v;
    comps.row(i) = v.transpose();
    state.components.emplace_back(v.data(), v.data() + d);
    state.explained_variance.push_back(
        std::max(0.0, solver.eigenvalues()(static_cast<Eigen::Index>(d) - 1 - i)));
  }

  const Eigen::MatrixXd projected = x * comps.transpose();

  DataTable out;
  for (int i = 1; i <= k; ++i) out.column_names.push_back("V" + std::to_string(i));
  out.column_names.push_back(table.label_column);
  out.label_column = table.label_column;
  out.rows.reserve(n);
  const std::size_t li = table.label_index();
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<double> row(static_cast<std::size_t>(k) + 1);
    for (int c = 0; c < k; ++c) {
      row[static_cast<std::size_t>(c)] =
          projected(static_cast<Eigen::Index>(r), c);
    }
    row.back() = table.rows[r][li];
    out.rows.push_back(std::move(row));
  }
  return {std::move(out), std::move(state)};
}

// Records per-feature min/max on the fit table; the label is not scaled.
inline ScalerState minmax_fit(const DataTable& table) {
  validate_table(table);
  if (table.rows.empty()) throw std::invalid_argument("cannot fit scaler on empty table");
  ScalerState state;
  for (std::size_t c : table.feature_indices()) {
    double lo = table.rows[0][c], hi = table.rows[0][c];
    for (const auto& row : table.rows) {
      lo = std::min(lo, row[c]);
      hi = std::max(hi, row[c]);
    }
    state.columns.push_back(table.column_names[c]);
    state.mins.push_back(lo);
    state.maxs.push_back(hi);
  }
  return state;
}

// Applies (v - min) / (max - min) per named column, clamping unseen values
// into [0,1]; a constant fit column maps to 0.
inline DataTable minmax_apply(const ScalerState& state, const DataTable& table) {
  validate_table(table);
  DataTable out = table;
  for (std::size_t s = 0; s < state.columns.size(); ++s) {
    std::size_t col = table.column_names.size();
    for (std::size_t c = 0; c < table.column_names.size(); ++c) {
      if (table.column_names[c] == state.columns[s]) {
        col = c;
        break;
      }
    }
    if (col == table.column_names.size()) {
      throw std::invalid_argument("scaler column '" + state.columns[s] +
                                  "' not present in table");
    }
    const double lo = state.mins[s];
    const double range = state.maxs[s] - lo;
    for (auto& row : out.rows) {
      const double v = range > 0.0 ? (row[col] - lo) / range : 0.0;
      row[col] = std::clamp(v, 0.0, 1.0);
    }
  }
  return out;
}

// Stratified split: per class, round(test_fraction * count) rows go to test,
// chosen by seeded shuffle; row order within each part follows the input.
inline std::pair<DataTable, DataTable> split_train_test(const DataTable& table,
                                                        double test_fraction,
                                                        std::uint64_t seed) {
  validate_table(table);
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("test fraction must lie strictly in (0,1)");
  }
  std::vector<std::size_t> by_class[2];
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    by_class[table.label_of(r)].push_back(r);
  }
  std::mt19937_64 rng(seed);
  std::vector<bool> in_test(table.n_rows(), false);
  for (auto& indices : by_class) {
    if (indices.size() < 2) {
      throw std::invalid_argument("each class needs at least 2 rows to split");
    }
    const auto take = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(indices.size())));
    if (take == 0 || take >= indices.size()) {
      throw std::invalid_argument("split leaves a class empty on one side");
    }
    detail::shuffle_indices(indices, rng);
    for (std::size_t i = 0; i < take; ++i) in_test[indices[i]] = true;
  }

  DataTable train, test;
  train.column_names = test.column_names = table.column_names;
  train.label_column = test.label_column = table.label_column;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    (in_test[r] ? test : train).rows.push_back(table.rows[r]);
  }
  return {std::move(train), std::move(test)};
}

// ---------------------------------------------------------------------------
// File round-trips: prepared tables as CSV, states as key=value text.

inline void write_table_csv(const DataTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  std::string buf;
  for (std::size_t c = 0; c < table.column_names.size(); ++c) {
    if (c) buf.push_back(',');
    buf += table.column_names[c];
  }
  buf.push_back('\n');
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) buf.push_back(',');
      detail::format_double(buf, row[c]);
    }
    buf.push_back('\n');
  }
  out << buf;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline DataTable read_table_csv(const std::string& path,
                                const std::string& label_column) {
  const auto records = detail::read_csv_records(path);
  DataTable table;
  table.column_names = records[0];
  table.label_column = label_column;
  table.label_index();  // throws if the label column is absent
  table.rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.column_names.size()) {
      throw std::runtime_error(path + ":" + std::to_string(r + 1) +
                               ": expected " +
                               std::to_string(table.column_names.size()) +
                               " fields, got " +
                               std::to_string(records[r].size()));
    }
    std::vector<double> row;
    row.reserve(records[r].size());
    for (std::size_t c = 0; c < records[r].size(); ++c) {
      row.push_back(detail::parse_number(records[r][c], path, r + 1,
                                         table.column_names[c]));
    }
    table.rows.push_back(std::move(row));
  }
  validate_table(table);
  return table;
}

inline void write_mapping_csv(const OrdinalMapping& mapping,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "raw_value,code\n";
  for (const auto& [raw, code] : mapping.codes) {
    out << raw << ',' << code << '\n';
  }
}

inline void write_scaler_state(const ScalerState& state,
                               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  for (std::size_t i = 0; i < state.columns.size(); ++i) {
    std::string line;
    line += "min." + state.columns[i] + "=";
    detail::format_double(line, state.mins[i]);
    line += "\nmax." + state.columns[i] + "=";
    detail::format_double(line, state.maxs[i]);
    line += "\n";
    out << line;
  }
}

inline void write_pca_state(const PcaState& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  std::string line = "inputs=";
  for (std::size_t i = 0; i < state.input_columns.size(); ++i) {
    if (i) line.push_back(',');
    line += state.input_columns[i];
  }
  out << line << '\n';
  line = "means=";
  for (std::size_t i = 0; i < state.means.size(); ++i) {
    if (i) line.push_back(',');
    detail::format_double(line, state.means[i]);
  }
  out << line << '\n';
  for (std::size_t k = 0; k < state.components.size(); ++k) {
    line = "component." + std::to_string(k + 1) + "=";
    for (std::size_t i = 0; i < state.components[k].size(); ++i) {
      if (i) line.push_back(',');
      detail::format_double(line, state.components[k][i]);
    }
    out << line << '\n';
    line = "variance." + std::to_string(k + 1) + "=";
    detail::format_double(line, state.explained_variance[k]);
    out << line << '\n';
  }
}

}  // namespace vqcbench

#endif  // VQCBENCH_DATAPREP_HPP_
