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

#ifndef ANONYLAT_ML_HPP_
#define ANONYLAT_ML_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "partition.hpp"
#include "table.hpp"

namespace anonylat {

// Columns of one source attribute: a single numeric column or a one-hot block.
struct FeatureBlock {
  std::string attribute;
  size_t first = 0;
  size_t width = 1;
  bool one_hot = false;
};

struct EncodedMatrix {
  std::vector<std::string> feature_names;
  std::vector<FeatureBlock> blocks;
  std::vector<size_t> row_ids;
  std::vector<double> values;  // row-major, row_ids.size() x feature_names.size()

  size_t rows() const { return row_ids.size(); }
  size_t cols() const { return feature_names.size(); }
  double at(size_t r, size_t c) const { return values[r * cols() + c]; }
  size_t numeric_columns() const;
  EncodedMatrix select(const std::vector<size_t>& positions) const;
};

struct EncodedData {
  EncodedMatrix x;
  std::vector<std::string> y;
};

// Numerical cells become interval midpoints ("*" takes the midpoint of the
// attribute's observed range); categorical cells are one-hot encoded over
// the sorted labels present in the table. The target becomes the label vector.
EncodedData encode_for_ml(const GeneralisedTable& table);
// Encoding of the original, non-generalised table.
EncodedData encode_for_ml(const Table& table);

// Rows of `data` at the given row ids (which index the source table).
EncodedData select_rows(const EncodedData& data, const std::vector<size_t>& ids);

// Euclidean n-nearest-neighbour vote. All training rows tied with the n-th
// nearest distance vote; vote ties go to the smaller summed distance, then the
// smaller label.
std::vector<std::string> knn_classify(const EncodedMatrix& train,
                                      const std::vector<std::string>& labels,
                                      const EncodedMatrix& test, size_t n_neighbours);

struct ZeroRule {
  std::string label;
  double accuracy = 0;
  std::vector<std::string> predictions;
};
// Predicts the most frequent test label (smallest label on ties).
ZeroRule zero_rule_predict(const std::vector<std::string>& test_labels);

enum class Averaging { kMacro, kWeighted };

struct ClassCounts {
  std::string label;
  int64_t tp = 0;
  int64_t tn = 0;
  int64_t fp = 0;
  int64_t fn = 0;
};

struct EvalReport {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::vector<ClassCounts> counts;  // one-vs-rest, sorted by label
};

// With a positive class, precision/recall/F1 are those of that class;
// otherwise they are averaged over the union of actual and predicted labels.
EvalReport evaluate(const std::vector<std::string>& predicted,
                    const std::vector<std::string>& actual,
                    const std::optional<std::string>& positive_class = std::nullopt,
                    Averaging averaging = Averaging::kMacro);

// Pearson correlation of average ranks; nullopt when either column is constant.
std::optional<double> spearman_rank_correlation(const std::vector<double>& x,
                                                const std::vector<double>& y);

struct HomogeneityRow {
  size_t class_id = 0;
  double homogeneity = 0;
  size_t size = 0;
};
// Share of each class carrying its most frequent target label.
std::vector<HomogeneityRow> homogeneity_histogram(const Partition& p, const Table& table);

}  // namespace anonylat

#endif  // ANONYLAT_ML_HPP_
