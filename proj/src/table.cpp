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

#include "table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "util.hpp"

namespace anonylat {

void validate_schema(const std::vector<AttributeSchema>& attributes) {
  std::set<std::string> names;
  int targets = 0;
  int qids = 0;
  for (const auto& a : attributes) {
    if (a.name.empty()) fail(ErrorCode::kSchema, "attribute with empty name");
    if (!names.insert(a.name).second) {
      fail(ErrorCode::kSchema, "duplicate attribute name '" + a.name + "'");
    }
    if (a.role == Role::kTarget) ++targets;
    if (a.role == Role::kQid) ++qids;
  }
  if (targets != 1) {
    fail(ErrorCode::kSchema, "schema must have exactly one target attribute");
  }
  if (qids < 1) fail(ErrorCode::kSchema, "schema must have at least one QID");
}

DatasetSchema parse_schema_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kSchema, std::string("schema is not valid JSON: ") + e.what());
  }
  DatasetSchema schema;
  try {
    for (const auto& ja : j.at("attributes")) {
      AttributeSchema a;
      a.name = ja.at("name").get<std::string>();
      const auto kind = ja.at("kind").get<std::string>();
      if (kind == "categorical") {
        a.kind = Kind::kCategorical;
      } else if (kind == "numerical") {
        a.kind = Kind::kNumerical;
      } else {
        fail(ErrorCode::kSchema, "unknown kind '" + kind + "' for " + a.name);
      }
      const auto role = ja.at("role").get<std::string>();
      if (role == "qid") {
        a.role = Role::kQid;
      } else if (role == "insensitive") {
        a.role = Role::kInsensitive;
      } else if (role == "target") {
        a.role = Role::kTarget;
      } else {
        fail(ErrorCode::kSchema, "unknown role '" + role + "' for " + a.name);
      }
      if (ja.contains("hierarchy")) {
        const auto& h = ja.at("hierarchy");
        IntervalSpec spec;
        spec.widths = h.at("widths").get<std::vector<double>>();
        spec.origin = h.value("origin", 0.0);
        a.interval_hierarchy = spec;
      }
      schema.attributes.push_back(std::move(a));
    }
    schema.missing_marker = j.value("missing_marker", std::string("?"));
    schema.drop_missing = j.value("drop_missing", true);
    if (j.contains("positive_class") && !j.at("positive_class").is_null()) {
      schema.positive_class = j.at("positive_class").get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kSchema, std::string("malformed schema: ") + e.what());
  }
  validate_schema(schema.attributes);
  return schema;
}

DatasetSchema load_schema(const std::string& path) {
  return parse_schema_json(read_file(path));
}

Table::Table(std::vector<AttributeSchema> schema,
             std::vector<std::vector<std::string>> rows)
    : schema_(std::move(schema)), rows_(std::move(rows)) {
  validate_schema(schema_);
  if (rows_.empty()) fail(ErrorCode::kSchema, "table has no rows");
  numbers_.resize(schema_.size());
  for (size_t c = 0; c < schema_.size(); ++c) {
    if (schema_[c].role == Role::kTarget) target_ = c;
    if (schema_[c].role == Role::kQid) qids_.push_back(c);
    if (schema_[c].kind == Kind::kNumerical) numbers_[c].resize(rows_.size());
  }
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != schema_.size()) {
      fail(ErrorCode::kParse, "row " + std::to_string(r) + " has " +
                                  std::to_string(rows_[r].size()) +
                                  " cells, expected " +
                                  std::to_string(schema_.size()));
    }
    for (size_t c = 0; c < schema_.size(); ++c) {
      if (schema_[c].kind != Kind::kNumerical) continue;
      auto v = parse_number(rows_[r][c]);
      if (!v) {
        fail(ErrorCode::kParse, "row " + std::to_string(r) + ", column '" +
                                    schema_[c].name + "': '" + rows_[r][c] +
                                    "' is not a finite number");
      }
      numbers_[c][r] = *v;
    }
  }
}

std::optional<size_t> Table::find_column(const std::string& name) const {
  for (size_t c = 0; c < schema_.size(); ++c) {
    if (schema_[c].name == name) return c;
  }
  return std::nullopt;
}

std::vector<std::string> Table::header() const {
  std::vector<std::string> h;
  for (const auto& a : schema_) h.push_back(a.name);
  return h;
}

bool Table::operator==(const Table& other) const {
  if (rows_ != other.rows_ || schema_.size() != other.schema_.size()) {
    return false;
  }
  for (size_t c = 0; c < schema_.size(); ++c) {
    if (schema_[c].name != other.schema_[c].name ||
        schema_[c].kind != other.schema_[c].kind ||
        schema_[c].role != other.schema_[c].role) {
      return false;
    }
  }
  return true;
}

Table load_csv(const std::string& path,
               const std::vector<AttributeSchema>& schema, bool drop_missing,
               const std::string& missing_marker) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  std::vector<std::string> fields;
  if (!read_csv_record(in, fields)) fail(ErrorCode::kSchema, path + " is empty");
  if (fields.size() != schema.size()) {
    fail(ErrorCode::kSchema, path + ": header has " +
                                 std::to_string(fields.size()) +
                                 " columns, schema has " +
                                 std::to_string(schema.size()));
  }
  for (size_t c = 0; c < schema.size(); ++c) {
    if (fields[c] != schema[c].name) {
      fail(ErrorCode::kSchema, path + ": header column " + std::to_string(c) +
                                   " is '" + fields[c] + "', schema expects '" +
                                   schema[c].name + "'");
    }
  }
  std::vector<std::vector<std::string>> rows;
  size_t line = 1;
  while (read_csv_record(in, fields)) {
    ++line;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != schema.size()) {
      fail(ErrorCode::kParse, path + ": line " + std::to_string(line) +
                                  " has " + std::to_string(fields.size()) +
                                  " cells, expected " +
                                  std::to_string(schema.size()));
    }
    if (drop_missing) {
      bool missing = std::any_of(fields.begin(), fields.end(), [&](const auto& f) {
        return f.empty() || f == missing_marker;
      });
      if (missing) continue;
    }
    rows.push_back(fields);
  }
  try {
    return Table(schema, std::move(rows));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

Table load_csv(const std::string& path, const DatasetSchema& schema) {
  return load_csv(path, schema.attributes, schema.drop_missing,
                  schema.missing_marker);
}

void write_table_csv(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path);
  write_csv_record(out, table.header());
  for (size_t r = 0; r < table.num_rows(); ++r) {
    write_csv_record(out, table.row(r));
  }
  if (!out) fail(ErrorCode::kIo, "write failed for " + path);
}

Table merge_target_values(const Table& table,
                          const std::map<std::string, std::string>& mapping) {
  const size_t t = table.target_column();
  std::set<std::string> observed;
  for (size_t r = 0; r < table.num_rows(); ++r) observed.insert(table.cell(r, t));
  for (const auto& [from, to] : mapping) {
    if (!observed.count(from)) {
      fail(ErrorCode::kSchema, "target merge refers to '" + from +
                                   "', which is not a value of target '" +
                                   table.attribute(t).name + "'");
    }
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(table.num_rows());
  for (size_t r = 0; r < table.num_rows(); ++r) {
    auto row = table.row(r);
    auto it = mapping.find(row[t]);
    if (it != mapping.end()) row[t] = it->second;
    rows.push_back(std::move(row));
  }
  return Table(table.schema(), std::move(rows));
}

std::pair<std::vector<size_t>, std::vector<size_t>> split_train_test(
    const Table& table, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0 && spec.train_fraction < 1)) {
    fail(ErrorCode::kInvalidArgument, "train_fraction must lie in (0, 1)");
  }
  const size_t n = table.num_rows();
  if (n < 2) fail(ErrorCode::kBounds, "a split needs at least 2 rows");
  std::vector<size_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::mt19937_64 rng(spec.seed);
  for (size_t i = n - 1; i > 0; --i) {
    std::swap(ids[i], ids[uniform_index(rng, i + 1)]);
  }
  const auto n_train = static_cast<size_t>(std::llround(spec.train_fraction * n));
  std::vector<size_t> train(ids.begin(), ids.begin() + n_train);
  std::vector<size_t> test(ids.begin() + n_train, ids.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {train, test};
}

}  // namespace anonylat
