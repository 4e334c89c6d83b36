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

#ifndef ANONYLAT_TABLE_HPP_
#define ANONYLAT_TABLE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace anonylat {

enum class Kind { kCategorical, kNumerical };
enum class Role { kQid, kInsensitive, kTarget };

// Bucket widths for a generated numeric hierarchy.
struct IntervalSpec {
  std::vector<double> widths;
  double origin = 0;
};

struct AttributeSchema {
  std::string name;
  Kind kind = Kind::kCategorical;
  Role role = Role::kInsensitive;
  std::optional<IntervalSpec> interval_hierarchy;
};

struct DatasetSchema {
  std::vector<AttributeSchema> attributes;
  std::string missing_marker = "?";
  bool drop_missing = true;
  std::optional<std::string> positive_class;
};

// Throws a schema error unless names are unique, exactly one attribute is
// the target and at least one is a QID.
void validate_schema(const std::vector<AttributeSchema>& attributes);

DatasetSchema parse_schema_json(const std::string& text);
DatasetSchema load_schema(const std::string& path);

struct SplitSpec {
  double train_fraction = 0.7;
  uint64_t seed = 0;
};

// Immutable row-major table. Row ids are the indices 0..N-1.
class Table {
 public:
  Table(std::vector<AttributeSchema> schema,
        std::vector<std::vector<std::string>> rows);

  size_t num_rows() const { return rows_.size(); }
  size_t num_columns() const { return schema_.size(); }
  const std::vector<AttributeSchema>& schema() const { return schema_; }
  const AttributeSchema& attribute(size_t col) const { return schema_[col]; }
  const std::vector<std::string>& row(size_t r) const { return rows_[r]; }
  const std::string& cell(size_t r, size_t col) const { return rows_[r][col]; }
  // Parsed value of a numerical cell.
  double number(size_t r, size_t col) const { return numbers_[col][r]; }
  const std::vector<double>& numeric_column(size_t col) const {
    return numbers_[col];
  }

  size_t target_column() const { return target_; }
  const std::vector<size_t>& qid_columns() const { return qids_; }
  std::optional<size_t> find_column(const std::string& name) const;
  std::vector<std::string> header() const;

  bool operator==(const Table& other) const;

 private:
  std::vector<AttributeSchema> schema_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::vector<double>> numbers_;
  size_t target_ = 0;
  std::vector<size_t> qids_;
};

Table load_csv(const std::string& path,
               const std::vector<AttributeSchema>& schema, bool drop_missing,
               const std::string& missing_marker = "?");
Table load_csv(const std::string& path, const DatasetSchema& schema);

void write_table_csv(const Table& table, const std::string& path);

Table merge_target_values(const Table& table,
                          const std::map<std::string, std::string>& mapping);

std::pair<std::vector<size_t>, std::vector<size_t>> split_train_test(
    const Table& table, const SplitSpec& spec);

}  // namespace anonylat

#endif  // ANONYLAT_TABLE_HPP_
