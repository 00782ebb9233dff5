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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "vqcbench/dataprep.hpp"

using namespace vqcbench;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "vqcbench_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string& name, const std::string& content) {
  const auto path = temp_file(name);
  std::ofstream out(path);
  out << content;
  return path.string();
}

const char* kBankSimSample =
    "step,customer,age,gender,zipcodeOri,merchant,zipMerchant,category,amount,fraud\n"
    "0,'C1093826151','4','M','28007','M348934600','28007','es_transportation',4.55,0\n"
    "0,'C352968107','2','M','28007','M348934600','28007','es_transportation',39.68,0\n"
    "0,'C2054744914','1','F','28007','M1823072687','28007','es_transportation',26.89,0\n"
    "1,'C757503768','U','E','28007','M348934600','28007','es_health',17.25,1\n";

std::string european_sample(int truncate_last_row = 0) {
  std::string s = "Time";
  for (int i = 1; i <= 28; ++i) s += ",V" + std::to_string(i);
  s += ",Amount,Class\n";
  std::mt19937_64 rng(5);
  for (int r = 0; r < 3; ++r) {
    std::string row = std::to_string(r * 100);
    const int cells = (r == 2 && truncate_last_row) ? 20 : 28;
    for (int i = 0; i < cells; ++i) {
      row += "," + std::to_string(
                       static_cast<double>(rng() % 1000) / 100.0 - 5.0);
    }
    if (!(r == 2 && truncate_last_row)) {
      row += "," + std::to_string(static_cast<double>(rng() % 10000) / 100.0);
      row += r == 0 ? ",1" : ",0";
    }
    s += row + "\n";
  }
  return s;
}

DataTable synthetic_table(std::size_t n0, std::size_t n1,
                          std::size_t extra_features = 0) {
  DataTable t;
  t.column_names = {"id"};
  for (std::size_t i = 0; i < extra_features; ++i) {
    t.column_names.push_back("f" + std::to_string(i));
  }
  t.column_names.push_back("y");
  t.label_column = "y";
  std::mt19937_64 rng(77);
  for (std::size_t r = 0; r < n0 + n1; ++r) {
    std::vector<double> row{static_cast<double>(r)};
    for (std::size_t i = 0; i < extra_features; ++i) {
      row.push_back(static_cast<double>(rng() % 1000) / 999.0);
    }
    row.push_back(r < n0 ? 0.0 : 1.0);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::multiset<double> id_multiset(const DataTable& t) {
  std::multiset<double> ids;
  for (const auto& row : t.rows) ids.insert(row[0]);
  return ids;
}

}  // namespace

TEST_CASE("bank transaction ingestion", "[dataprep]") {
  const std::string path = write_file("banksim_ok.csv", kBankSimSample);
  std::vector<OrdinalMapping> mappings;
  const DataTable t = load_banksim(path, &mappings);

  SECTION("surviving columns and label") {
    const std::vector<std::string> want{"Step",     "Customer", "Age",
                                        "Gender",   "Merchant", "Category",
                                        "Amount",   "Fraud"};
    CHECK(t.column_names == want);
    CHECK(t.label_column == "Fraud");
    CHECK(t.n_rows() == 4);
  }
  SECTION("age digit extraction and the unknown band") {
    CHECK(t.rows[0][2] == 4.0);
    CHECK(t.rows[1][2] == 2.0);
    CHECK(t.rows[3][2] == 7.0);  // 'U'
  }
  SECTION("sorted-vocabulary ordinal codes") {
    // Customers sort as C1093826151 < C2054744914 < C352968107 < C757503768.
    CHECK(t.rows[0][1] == 0.0);
    CHECK(t.rows[1][1] == 2.0);
    CHECK(t.rows[2][1] == 1.0);
    CHECK(t.rows[3][1] == 3.0);
    // Genders: E < F < M.
    CHECK(t.rows[0][3] == 2.0);
    CHECK(t.rows[2][3] == 1.0);
    CHECK(t.rows[3][3] == 0.0);
    // Merchants: M1823072687 < M348934600.
    CHECK(t.rows[0][4] == 1.0);
    CHECK(t.rows[2][4] == 0.0);
    // Categories: es_health < es_transportation.
    CHECK(t.rows[0][5] == 1.0);
    CHECK(t.rows[3][5] == 0.0);
  }
  SECTION("numeric passthrough columns") {
    CHECK(t.rows[0][0] == 0.0);
    CHECK(t.rows[3][0] == 1.0);
    CHECK(t.rows[1][6] == Catch::Approx(39.68));
    CHECK(t.rows[3][7] == 1.0);
    validate_table(t);
  }
  SECTION("mapping sidecar content") {
    REQUIRE(mappings.size() == 4);
    CHECK(mappings[0].column == "Customer");
    REQUIRE(mappings[1].codes.size() == 3);
    CHECK(mappings[1].codes[0].first == "E");
    CHECK(mappings[1].codes[0].second == 0);
    CHECK(mappings[1].codes[2].first == "M");
    const auto sidecar = temp_file("gender_mapping.csv");
    write_mapping_csv(mappings[1], sidecar.string());
    std::ifstream in(sidecar);
    std::string line;
    std::getline(in, line);
    CHECK(line == "raw_value,code");
    std::getline(in, line);
    CHECK(line == "E,0");
  }
  SECTION("missing column is reported by name") {
    const std::string bad = write_file(
        "banksim_nocol.csv",
        "step,customer,gender,zipcodeOri,merchant,zipMerchant,category,amount,fraud\n");
    CHECK_THROWS_WITH(load_banksim(bad),
                      Catch::Matchers::ContainsSubstring("age"));
  }
  SECTION("unparseable cell is reported with its line number") {
    std::string broken = kBankSimSample;
    const auto pos = broken.find("39.68");
    broken.replace(pos, 5, "oops!");
    const std::string bad = write_file("banksim_badcell.csv", broken);
    CHECK_THROWS_WITH(load_banksim(bad),
                      Catch::Matchers::ContainsSubstring(":3:"));
  }
  SECTION("short row is reported with its line number") {
    const std::string bad =
        write_file("banksim_short.csv",
                   std::string(kBankSimSample) + "1,'C1','3','M','28007'\n");
    CHECK_THROWS_WITH(load_banksim(bad),
                      Catch::Matchers::ContainsSubstring(":6:"));
  }
}

TEST_CASE("card transaction ingestion", "[dataprep]") {
  SECTION("thirty features plus the class label") {
    const std::string path = write_file("euro_ok.csv", european_sample());
    const DataTable t = load_european(path);
    CHECK(t.n_cols() == 31);
    CHECK(t.column_names.front() == "Time");
    CHECK(t.column_names[1] == "V1");
    CHECK(t.column_names[28] == "V28");
    CHECK(t.column_names[29] == "Amount");
    CHECK(t.label_column == "Class");
    CHECK(t.n_rows() == 3);
    CHECK(t.label_of(0) == 1);
    CHECK(t.label_of(1) == 0);
    validate_table(t);
  }
  SECTION("truncated row is reported with its line number") {
    const std::string path = write_file("euro_trunc.csv", european_sample(1));
    CHECK_THROWS_WITH(load_european(path),
                      Catch::Matchers::ContainsSubstring(":4:"));
  }
}

TEST_CASE("balanced undersampling", "[dataprep]") {
  SECTION("majority is cut to the minority size") {
    const DataTable t = synthetic_table(10, 4);
    const DataTable u = undersample_balanced(t, 3);
    REQUIRE(u.n_rows() == 8);
    int ones = 0;
    for (std::size_t r = 0; r < u.n_rows(); ++r) ones += u.label_of(r);
    CHECK(ones == 4);
    // Every minority row survives.
    const auto ids = id_multiset(u);
    for (std::size_t r = 10; r < 14; ++r) {
      CHECK(ids.count(static_cast<double>(r)) == 1);
    }
  }
  SECTION("already balanced input keeps every row") {
    const DataTable t = synthetic_table(4, 4);
    const DataTable u = undersample_balanced(t, 9);
    CHECK(id_multiset(u) == id_multiset(t));
  }
  SECTION("same seed reproduces rows and order exactly") {
    const DataTable t = synthetic_table(50, 20);
    const DataTable a = undersample_balanced(t, 123);
    const DataTable b = undersample_balanced(t, 123);
    CHECK(a.rows == b.rows);
    const DataTable c = undersample_balanced(t, 124);
    CHECK(a.rows != c.rows);
  }
  SECTION("single-class input is rejected") {
    const DataTable t = synthetic_table(6, 0);
    CHECK_THROWS_AS(undersample_balanced(t, 0), std::invalid_argument);
  }
}

TEST_CASE("principal component reduction", "[dataprep]") {
  SECTION("rank-1 data is reproduced exactly by one component") {
    DataTable t;
    t.column_names = {"a", "b", "y"};
    t.label_column = "y";
    for (int i = 0; i < 8; ++i) {
      const double x = 0.3 * i - 1.0;
      t.rows.push_back({x, 2.0 * x, static_cast<double>(i % 2)});
    }
    const auto [out, state] = pca_fit_transform(t, 1);
    REQUIRE(state.components.size() == 1);
    const auto& c = state.components[0];
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
      const double z = out.rows[r][0];
      CHECK(state.means[0] + z * c[0] ==
            Catch::Approx(t.rows[r][0]).margin(1e-10));
      CHECK(state.means[1] + z * c[1] ==
            Catch::Approx(t.rows[r][1]).margin(1e-10));
    }
  }
  SECTION("top-7 of a random 30-feature table") {
    const DataTable t = synthetic_table(40, 20, 29);  // id + 29 extras = 30
    const auto [out, state] = pca_fit_transform(t, 7);

    const std::vector<std::string> want{"V1", "V2", "V3", "V4",
                                        "V5", "V6", "V7", "y"};
    CHECK(out.column_names == want);
    CHECK(out.label_column == "y");
    REQUIRE(out.n_rows() == t.n_rows());
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
      CHECK(out.rows[r].back() == t.rows[r].back());
    }

    // Components orthonormal.
    for (std::size_t i = 0; i < 7; ++i) {
      for (std::size_t j = i; j < 7; ++j) {
        double dot = 0.0;
        for (std::size_t d = 0; d < 30; ++d) {
          dot += state.components[i][d] * state.components[j][d];
        }
        CHECK(dot == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-8));
      }
    }

    // Column variances non-increasing and equal to the eigenvalues.
    const std::size_t n = out.n_rows();
    std::vector<double> variance(7, 0.0);
    for (std::size_t c = 0; c < 7; ++c) {
      double mean = 0.0;
      for (const auto& row : out.rows) mean += row[c];
      mean /= static_cast<double>(n);
      for (const auto& row : out.rows) {
        variance[c] += (row[c] - mean) * (row[c] - mean);
      }
      variance[c] /= static_cast<double>(n - 1);
      CHECK(variance[c] ==
            Catch::Approx(state.explained_variance[c]).margin(1e-8));
      if (c > 0) CHECK(variance[c] <= variance[c - 1] + 1e-12);
    }

    // Residual power equals the sum of the discarded eigenvalues.
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 30);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < 30; ++c) {
        x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            t.rows[r][c];
      }
    }
    x.rowwise() -= Eigen::RowVectorXd(x.colwise().mean());
    const Eigen::MatrixXd cov = x.transpose() * x / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    double discarded = 0.0;
    for (Eigen::Index i = 0; i < 30 - 7; ++i) discarded += es.eigenvalues()(i);

    Eigen::MatrixXd comp(7, 30);
    for (Eigen::Index i = 0; i < 7; ++i) {
      for (Eigen::Index d = 0; d < 30; ++d) {
        comp(i, d) = state.components[static_cast<std::size_t>(i)]
                                     [static_cast<std::size_t>(d)];
      }
    }
    const Eigen::MatrixXd residual = x - (x * comp.transpose()) * comp;
    CHECK(residual.squaredNorm() / static_cast<double>(n - 1) ==
          Catch::Approx(discarded).margin(1e-8));
  }
  SECTION("guards") {
    const DataTable t = synthetic_table(4, 4, 2);  // 3 feature columns
    CHECK_THROWS_AS(pca_fit_transform(t, 4), std::invalid_argument);
    const DataTable tiny = synthetic_table(1, 1, 2);
    CHECK_THROWS_AS(pca_fit_transform(tiny, 3), std::invalid_argument);
  }
}

TEST_CASE("min-max scaling", "[dataprep]") {
  DataTable t;
  t.column_names = {"a", "b", "y"};
  t.label_column = "y";
  t.rows = {{2.0, 5.0, 0.0}, {4.0, 5.0, 1.0}, {6.0, 5.0, 1.0}};

  const ScalerState state = minmax_fit(t);
  SECTION("fit captures per-column extremes of the features only") {
    REQUIRE(state.columns == std::vector<std::string>{"a", "b"});
    CHECK(state.mins[0] == 2.0);
    CHECK(state.maxs[0] == 6.0);
    CHECK(state.mins[1] == 5.0);
    CHECK(state.maxs[1] == 5.0);
  }
  SECTION("transform of the fit table lies in [0,1]") {
    const DataTable s = minmax_apply(state, t);
    CHECK(s.rows[0][0] == 0.0);
    CHECK(s.rows[1][0] == 0.5);
    CHECK(s.rows[2][0] == 1.0);
    // Constant column maps to zero; labels untouched.
    for (std::size_t r = 0; r < 3; ++r) {
      CHECK(s.rows[r][1] == 0.0);
      CHECK(s.rows[r][2] == t.rows[r][2]);
    }
  }
  SECTION("unseen values clamp into range and stay monotone") {
    DataTable fresh = t;
    fresh.rows = {{7.0, 5.0, 0.0}, {1.0, 4.0, 1.0}, {5.0, 6.0, 0.0}};
    const DataTable s = minmax_apply(state, fresh);
    CHECK(s.rows[0][0] == 1.0);
    CHECK(s.rows[1][0] == 0.0);
    CHECK(s.rows[2][0] == 0.75);
    CHECK(s.rows[1][1] == 0.0);
    CHECK(s.rows[2][1] == 0.0);
  }
  SECTION("guards") {
    DataTable empty;
    empty.column_names = {"a", "y"};
    empty.label_column = "y";
    CHECK_THROWS_AS(minmax_fit(empty), std::invalid_argument);
    ScalerState foreign = state;
    foreign.columns[0] = "zz";
    CHECK_THROWS_AS(minmax_apply(foreign, t), std::invalid_argument);
  }
}

TEST_CASE("stratified train/test split", "[dataprep]") {
  SECTION("balanced 984 rows split 788/196 with equal class halves") {
    const DataTable t = synthetic_table(492, 492);
    const auto [train, test] = split_train_test(t, 0.2, 42);
    CHECK(train.n_rows() == 788);
    CHECK(test.n_rows() == 196);
    int train1 = 0, test1 = 0;
    for (std::size_t r = 0; r < train.n_rows(); ++r) train1 += train.label_of(r);
    for (std::size_t r = 0; r < test.n_rows(); ++r) test1 += test.label_of(r);
    CHECK(train1 == 394);
    CHECK(test1 == 98);

    // Disjoint and exhaustive by the id feature.
    std::multiset<double> ids = id_multiset(train);
    const std::multiset<double> test_ids = id_multiset(test);
    for (double id : test_ids) CHECK(ids.count(id) == 0);
    ids.insert(test_ids.begin(), test_ids.end());
    CHECK(ids == id_multiset(t));
  }
  SECTION("same seed reproduces the partition") {
    const DataTable t = synthetic_table(30, 30);
    const auto [a_train, a_test] = split_train_test(t, 0.2, 7);
    const auto [b_train, b_test] = split_train_test(t, 0.2, 7);
    CHECK(a_train.rows == b_train.rows);
    CHECK(a_test.rows == b_test.rows);
    const auto [c_train, c_test] = split_train_test(t, 0.2, 8);
    CHECK(a_test.rows != c_test.rows);
  }
  SECTION("guards") {
    const DataTable t = synthetic_table(10, 10);
    CHECK_THROWS_AS(split_train_test(t, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(split_train_test(t, 1.0, 1), std::invalid_argument);
    const DataTable lopsided = synthetic_table(10, 1);
    CHECK_THROWS_AS(split_train_test(lopsided, 0.2, 1), std::invalid_argument);
  }
}

TEST_CASE("table files round-trip exactly", "[dataprep]") {
  DataTable t;
  t.column_names = {"a", "b", "y"};
  t.label_column = "y";
  t.rows = {{0.1, 1e-17, 0.0},
            {-3.5, 3.141592653589793, 1.0},
            {0.30000000000000004, -0.0, 1.0}};
  const auto path = temp_file("roundtrip.csv").string();
  write_table_csv(t, path);
  const DataTable back = read_table_csv(path, "y");
  CHECK(back.column_names == t.column_names);
  REQUIRE(back.n_rows() == t.n_rows());
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    for (std::size_t c = 0; c < t.n_cols(); ++c) {
      CHECK(back.rows[r][c] == t.rows[r][c]);
    }
  }
  CHECK_THROWS_AS(read_table_csv(path, "zz"), std::logic_error);
}

TEST_CASE("pipeline determinism end to end", "[dataprep]") {
  // clean -> undersample -> pca -> split -> scale, twice, byte-identical.
  const DataTable raw = synthetic_table(60, 25, 9);
  const auto prepare = [&raw](const std::string& tag) {
    const DataTable balanced = undersample_balanced(raw, 1001);
    const auto [reduced, pca] = pca_fit_transform(balanced, 7);
    const auto [train, test] = split_train_test(reduced, 0.2, 1002);
    const ScalerState scaler = minmax_fit(train);
    const DataTable strain = minmax_apply(scaler, train);
    const DataTable stest = minmax_apply(scaler, test);
    const auto p1 = temp_file("det_train_" + tag + ".csv").string();
    const auto p2 = temp_file("det_test_" + tag + ".csv").string();
    write_table_csv(strain, p1);
    write_table_csv(stest, p2);
    const auto slurp = [](const std::string& p) {
      std::ifstream in(p);
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    return slurp(p1) + "\x1e" + slurp(p2);
  };
  CHECK(prepare("a") == prepare("b"));

  // Scaler fitted on train only: train maps into [0,1] exactly, and a test
  // feature value outside the train extremes would clamp rather than move
  // the bounds.
  const DataTable balanced = undersample_balanced(raw, 1001);
  const auto [train, test] = split_train_test(balanced, 0.2, 1002);
  const ScalerState scaler = minmax_fit(train);
  const DataTable strain = minmax_apply(scaler, train);
  for (const auto& row : strain.rows) {
    for (std::size_t c = 0; c + 1 < row.size(); ++c) {
      CHECK(row[c] >= 0.0);
      CHECK(row[c] <= 1.0);
    }
  }
  for (std::size_t s = 0; s < scaler.columns.size(); ++s) {
    double lo = train.rows[0][s], hi = train.rows[0][s];
    for (const auto& row : train.rows) {
      lo = std::min(lo, row[s]);
      hi = std::max(hi, row[s]);
    }
    CHECK(scaler.mins[s] == lo);
    CHECK(scaler.maxs[s] == hi);
  }
}
