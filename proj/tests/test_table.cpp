// Copyright 2026 The anonylat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "table.hpp"

using namespace anonylat;
using namespace anonylat::testing;

namespace {

const char* kToyCsv =
    "zip,age,disease\n"
    "3500,23,flu\n"
    "3500,?,cold\n"
    "3506,27,flu\n"
    "?,27,cold\n"
    "3104,35,flu\n"
    "3105,35,flu\n"
    "3500,23,cold\n"
    "3506,?,flu\n"
    "3104,41,cold\n"
    "3105,44,flu\n";

std::string write_toy(const std::string& name, const std::string& text) {
  const auto dir = temp_dir(name);
  const auto path = dir / "t.csv";
  write_text(path, text);
  return path.string();
}

}  // namespace

TEST_CASE("load_csv drops rows with missing markers") {
  const auto path = write_toy("drop", kToyCsv);
  const Table t = load_csv(path, zip_age_schema(), true);
  CHECK(t.num_rows() == 7);
  CHECK(t.cell(0, 0) == "3500");
  CHECK(t.cell(1, 0) == "3506");
  CHECK(t.number(6, 1) == 44);
}

TEST_CASE("load_csv with drop_missing off reports the bad numeric row") {
  const auto path = write_toy("keep", kToyCsv);
  CHECK(error_of([&] { load_csv(path, zip_age_schema(), false); }) == ErrorCode::kParse);
}

TEST_CASE("drop_missing removes exactly the rows carrying a marker") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::string text = "zip,age,disease\n";
    size_t clean = 0;
    for (int r = 0; r < 30; ++r) {
      const bool missing = uniform_index(rng, 4) == 0;
      const size_t col = uniform_index(rng, 3);
      std::vector<std::string> cells{"3500", "23", "flu"};
      if (missing) cells[col] = col == 0 ? "?" : (col == 1 ? "" : "?");
      else ++clean;
      text += join(cells, ",") + "\n";
    }
    const Table t = load_csv(write_toy("inject", text), zip_age_schema(), true);
    CHECK(t.num_rows() == clean);
  }
}

TEST_CASE("one-row file loads with a single id") {
  const Table t = load_csv(write_toy("one", "zip,age,disease\n3500,23,flu\n"),
                           zip_age_schema(), true);
  CHECK(t.num_rows() == 1);
}

TEST_CASE("header mismatch is a schema error") {
  const auto path = write_toy("hdr", "zip,years,disease\n3500,23,flu\n");
  CHECK(error_of([&] { load_csv(path, zip_age_schema(), true); }) == ErrorCode::kSchema);
}

TEST_CASE("schema validation") {
  auto s = zip_age_schema();
  CHECK_FALSE(error_of([&] { validate_schema(s); }));
  s[2].role = Role::kInsensitive;
  CHECK(error_of([&] { validate_schema(s); }) == ErrorCode::kSchema);
  s = zip_age_schema();
  s[1].name = "zip";
  CHECK(error_of([&] { validate_schema(s); }) == ErrorCode::kSchema);
  s = zip_age_schema();
  s[0].role = Role::kInsensitive;
  s[1].role = Role::kInsensitive;
  CHECK(error_of([&] { validate_schema(s); }) == ErrorCode::kSchema);
}

TEST_CASE("schema json parsing") {
  const DatasetSchema s = parse_schema_json(R"({
    "attributes": [
      {"name": "age", "kind": "numerical", "role": "qid",
       "hierarchy": {"widths": [5, 10], "origin": 0}},
      {"name": "y", "kind": "categorical", "role": "target"}],
    "missing_marker": "NA", "positive_class": "yes"})");
  REQUIRE(s.attributes.size() == 2);
  CHECK(s.attributes[0].kind == Kind::kNumerical);
  REQUIRE(s.attributes[0].interval_hierarchy.has_value());
  CHECK(s.attributes[0].interval_hierarchy->widths == std::vector<double>{5, 10});
  CHECK(s.missing_marker == "NA");
  CHECK(s.positive_class == "yes");
  CHECK(error_of([] { parse_schema_json(R"({"attributes": [{"name": "a", "kind": "x"}]})"); }) ==
        ErrorCode::kSchema);
  CHECK(error_of([] { parse_schema_json("{not json"); }) == ErrorCode::kSchema);
}

TEST_CASE("merge_target_values rewrites only the target") {
  const Table t = toy_table();
  const Table same = merge_target_values(t, {});
  CHECK(same == t);
  const Table merged = merge_target_values(t, {{"flu", "X"}, {"cold", "X"}});
  for (size_t r = 0; r < merged.num_rows(); ++r) {
    CHECK(merged.cell(r, 2) == "X");
    CHECK(merged.cell(r, 0) == t.cell(r, 0));
    CHECK(merged.cell(r, 1) == t.cell(r, 1));
  }
}

TEST_CASE("merge_target_values rejects labels absent from the target") {
  CHECK(error_of([] { merge_target_values(toy_table(), {{"3500", "X"}}); }) ==
        ErrorCode::kSchema);
}

TEST_CASE("split sizes and determinism") {
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < 10; ++i) rows.push_back({"3500", std::to_string(20 + i), "flu"});
  const Table t(zip_age_schema(), rows);
  const auto [train, test] = split_train_test(t, {0.7, 1});
  CHECK(train.size() == 7);
  CHECK(test.size() == 3);
  const auto again = split_train_test(t, {0.7, 1});
  CHECK(again.first == train);
  CHECK(again.second == test);
}

TEST_CASE("split partitions the ids for every seed") {
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < 57; ++i) rows.push_back({"3500", std::to_string(i), "flu"});
  const Table t(zip_age_schema(), rows);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    auto [train, test] = split_train_test(t, {0.7, seed});
    std::vector<size_t> all(train);
    all.insert(all.end(), test.begin(), test.end());
    std::sort(all.begin(), all.end());
    std::vector<size_t> ids(57);
    std::iota(ids.begin(), ids.end(), 0);
    CHECK(all == ids);
  }
}

TEST_CASE("split rejects tiny tables and bad fractions") {
  const Table one(zip_age_schema(), {{"3500", "23", "flu"}});
  CHECK(error_of([&] { split_train_test(one, {0.7, 0}); }).has_value());
  CHECK(error_of([] { split_train_test(toy_table(), {1.0, 0}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("exported tables load back identically") {
  const auto dir = temp_dir("roundtrip");
  const Table t = toy_table();
  write_table_csv(t, (dir / "t.csv").string());
  const Table back = load_csv((dir / "t.csv").string(), zip_age_schema(), true);
  CHECK(back == t);
}

TEST_CASE("adult fixture ingests to the published size") {
  const std::string dir = data_dir() + "/adult";
  const DatasetSchema s = load_schema(dir + "/schema.json");
  const Table t = load_csv(dir + "/adult.csv", s);
  CHECK(t.num_rows() == 30162);
  const auto [train, test] = split_train_test(t, {0.7, 0});
  CHECK(train.size() == 21113);
}

TEST_CASE("cahousing merge leaves three classes") {
  const std::string dir = data_dir() + "/cahousing";
  const DatasetSchema s = load_schema(dir + "/schema.json");
  const Table t = load_csv(dir + "/cahousing.csv", s);
  CHECK(t.num_rows() == 20640);
  const auto col = t.target_column();
  std::set<std::string> labels;
  for (size_t r = 0; r < t.num_rows(); ++r) labels.insert(t.cell(r, col));
  CHECK(labels.size() == 3);
}
