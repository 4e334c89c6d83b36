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


#ifndef ANONYLAT_RUNNER_HPP_
#define ANONYLAT_RUNNER_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "anonymizers.hpp"
#include "hierarchy.hpp"
#include "lattice.hpp"
#include "ml.hpp"
#include "partition.hpp"
#include "table.hpp"

namespace anonylat {

struct DatasetConfig {
  std::string name;
  std::string csv;
  std::string schema;
  std::string hierarchies;
  std::map<std::string, std::string> target_merges;
  // Overrides the schema's positive class.
  std::optional<std::string> positive_class;
};

enum class Classifier { kKnn, kZeroRule, kExportOnly };
const char* classifier_name(Classifier c);
std::optional<Classifier> parse_classifier(const std::string& name);

struct ExperimentConfig {
  std::vector<DatasetConfig> datasets;
  std::vector<Algorithm> algorithms;
  std::vector<int64_t> k_values;  // ascending
  std::vector<double> suppression_levels{0.03};
  std::vector<MetricKind> metrics{MetricKind::kGweight};
  std::vector<Classifier> classifiers{Classifier::kKnn};
  std::vector<double> weights;
  uint64_t seed = 0;
  SplitSpec split;
  size_t knn_neighbours = 10;
  Averaging averaging = Averaging::kMacro;
  std::string output_dir = "results";
  bool export_tables = false;
  bool homogeneity = false;
  bool trace = true;
  bool spearman = false;
};

// Relative paths resolve against `base_dir`. Throws a schema error on unknown
// keys or invalid values.
ExperimentConfig parse_config_json(const std::string& text, const std::string& base_dir);
ExperimentConfig load_config(const std::string& path);

struct RunRecord {
  std::string dataset;
  std::string algorithm;  // "none" for baselines
  int64_t k = 1;
  double suppression = 0;
  std::string metric;
  std::string classifier;
  uint64_t seed = 0;
  std::optional<EvalReport> eval;
  int64_t num_classes = 0;
  int64_t suppressed_count = 0;
  std::vector<std::pair<std::string, int>> node;  // (QID, level), OLA only
  std::string status = "ok";
  std::string diagnostic;
  double anonymise_seconds = 0;
  double classify_seconds = 0;
};

// Fixed column order of results.csv.
std::vector<std::string> results_header();
std::vector<std::string> record_fields(const RunRecord& r);
void write_results_csv(const std::vector<RunRecord>& records, const std::string& path);
std::vector<RunRecord> read_results_csv(const std::string& path);
void write_timings_csv(const std::vector<RunRecord>& records, const std::string& path);

// A dataset loaded once and shared read-only by every cell.
struct LoadedDataset {
  DatasetConfig config;
  DatasetSchema schema;
  std::unique_ptr<Table> table;
  Hierarchies hierarchies;
  std::unique_ptr<QidIndex> index;

  const std::optional<std::string>& positive_class() const {
    return config.positive_class ? config.positive_class : schema.positive_class;
  }
};
std::unique_ptr<LoadedDataset> load_dataset(const DatasetConfig& config);

// Distinct QID signatures among non-suppressed rows.
int64_t count_distinct_classes(const Partition& p);

struct SweepOptions {
  size_t jobs = 1;
  bool verify = false;
};
struct SweepResult {
  std::vector<RunRecord> records;
  size_t failures = 0;
};
// Runs every cell, writes results.csv, timings.csv and the enabled artefacts
// into config.output_dir.
SweepResult run_sweep(const ExperimentConfig& config, const SweepOptions& options);

struct ExportInfo {
  std::string dataset;
  bool anonymised_before_split = true;
};
// Generalised table in source column order plus "<path>.meta.json".
void export_anonymised(const Table& table, const Partition& p,
                       const Hierarchies& hierarchies, const std::string& path,
                       const ExportInfo& info = {});

struct HomogeneitySummary {
  int64_t num_classes = 0;
  double mean_homogeneity = 0;
};
// Rows (class_id, size, homogeneity) plus "<path>.summary.json".
HomogeneitySummary emit_homogeneity_report(const Partition& p, const Table& table,
                                           const std::string& path);

// One CSV per (dataset, suppression, metric) of the OLA records:
// k, one level column per QID, suppressed_count, f1. Returns the files
// written; non-OLA records are skipped.
std::vector<std::string> emit_generalisation_trace(const std::vector<RunRecord>& records,
                                                   const std::string& dir);

struct SpearmanRow {
  std::string feature;
  std::optional<double> rho;
};
// Correlation of every encoded feature with the target. Binary targets use
// the positive class as 1; other targets use the index of the sorted label.
std::vector<SpearmanRow> spearman_report(const Table& table,
                                         const std::optional<std::string>& positive_class);
void write_spearman_csv(const std::vector<SpearmanRow>& rows, const std::string& path);

}  // namespace anonylat

#endif  // ANONYLAT_RUNNER_HPP_
