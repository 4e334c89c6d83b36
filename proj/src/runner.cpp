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


#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "error.hpp"
#include "loss_metrics.hpp"
#include "oracle.hpp"
#include "util.hpp"

namespace anonylat {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

const char* classifier_name(Classifier c) {
  switch (c) {
    case Classifier::kKnn: return "knn";
    case Classifier::kZeroRule: return "zero_rule";
    case Classifier::kExportOnly: return "export_only";
  }
  return "?";
}

std::optional<Classifier> parse_classifier(const std::string& name) {
  if (name == "knn") return Classifier::kKnn;
  if (name == "zero_rule") return Classifier::kZeroRule;
  if (name == "export_only") return Classifier::kExportOnly;
  return std::nullopt;
}

namespace {

[[noreturn]] void config_error(const std::string& msg) {
  fail(ErrorCode::kSchema, "config: " + msg);
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) config_error(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) config_error("unknown key '" + key + "' in " + where);
  }
}

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    config_error("bad or missing '" + std::string(key) + "' in " + where);
  }
}

DatasetConfig parse_dataset(const json& j, const std::string& base) {
  check_keys(j, {"name", "dir", "csv", "schema", "hierarchies", "target_merges",
                 "positive_class"},
             "dataset");
  DatasetConfig d;
  d.name = get<std::string>(j, "name", "dataset");
  // "dir" names a directory laid out as <dir>/<name>.csv, schema.json and
  // hierarchies/; explicit entries override it.
  if (j.contains("dir")) {
    const fs::path dir = resolve(base, get<std::string>(j, "dir", "dataset"));
    d.csv = (dir / (d.name + ".csv")).string();
    d.schema = (dir / "schema.json").string();
    d.hierarchies = (dir / "hierarchies").string();
  }
  if (j.contains("csv")) d.csv = resolve(base, get<std::string>(j, "csv", "dataset"));
  if (j.contains("schema")) d.schema = resolve(base, get<std::string>(j, "schema", "dataset"));
  if (j.contains("hierarchies")) {
    d.hierarchies = resolve(base, get<std::string>(j, "hierarchies", "dataset"));
  }
  if (d.csv.empty() || d.schema.empty() || d.hierarchies.empty()) {
    config_error("dataset '" + d.name + "' needs csv, schema and hierarchies (or dir)");
  }
  if (j.contains("target_merges")) {
    d.target_merges = get<std::map<std::string, std::string>>(j, "target_merges", "dataset");
  }
  if (j.contains("positive_class")) {
    d.positive_class = get<std::string>(j, "positive_class", "dataset");
  }
  return d;
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  check_keys(j,
             {"datasets", "algorithms", "k_values", "suppression_levels", "metric", "metrics",
              "classifiers", "weights", "seed", "split", "knn_neighbours", "averaging",
              "output_dir", "export", "homogeneity", "trace", "spearman"},
             "config");
  ExperimentConfig c;
  if (!j.contains("datasets") || !j["datasets"].is_array() || j["datasets"].empty()) {
    config_error("'datasets' must be a non-empty array");
  }
  std::set<std::string> names;
  for (const auto& d : j["datasets"]) {
    c.datasets.push_back(parse_dataset(d, base_dir));
    if (!names.insert(c.datasets.back().name).second) {
      config_error("duplicate dataset name '" + c.datasets.back().name + "'");
    }
  }
  for (const auto& a : get<std::vector<std::string>>(j, "algorithms", "config")) {
    auto alg = parse_algorithm(a);
    if (!alg) config_error("unknown algorithm '" + a + "'");
    c.algorithms.push_back(*alg);
  }
  if (c.algorithms.empty()) config_error("'algorithms' must not be empty");
  if (j.contains("k_values")) {
    c.k_values = get<std::vector<int64_t>>(j, "k_values", "config");
  } else {
    for (int64_t k = 2; k <= 100; ++k) c.k_values.push_back(k);
  }
  if (c.k_values.empty()) config_error("'k_values' must not be empty");
  for (size_t i = 0; i < c.k_values.size(); ++i) {
    if (c.k_values[i] < 1) config_error("k values must be at least 1");
    if (i > 0 && c.k_values[i] <= c.k_values[i - 1]) {
      config_error("k values must be strictly ascending");
    }
  }
  if (j.contains("suppression_levels")) {
    c.suppression_levels = get<std::vector<double>>(j, "suppression_levels", "config");
  }
  if (c.suppression_levels.empty()) config_error("'suppression_levels' must not be empty");
  for (double s : c.suppression_levels) {
    if (!(s >= 0 && s < 1)) config_error("suppression levels must lie in [0, 1)");
  }
  std::vector<std::string> metric_names;
  if (j.contains("metric")) metric_names.push_back(get<std::string>(j, "metric", "config"));
  if (j.contains("metrics")) {
    for (auto& m : get<std::vector<std::string>>(j, "metrics", "config")) {
      metric_names.push_back(m);
    }
  }
  if (!metric_names.empty()) {
    c.metrics.clear();
    for (const auto& m : metric_names) {
      auto kind = parse_metric(m);
      if (!kind) config_error("unknown metric '" + m + "'");
      if (std::find(c.metrics.begin(), c.metrics.end(), *kind) == c.metrics.end()) {
        c.metrics.push_back(*kind);
      }
    }
  }
  if (j.contains("classifiers")) {
    c.classifiers.clear();
    for (const auto& name : get<std::vector<std::string>>(j, "classifiers", "config")) {
      auto cl = parse_classifier(name);
      if (!cl) config_error("unknown classifier '" + name + "'");
      c.classifiers.push_back(*cl);
    }
  }
  if (j.contains("weights")) c.weights = get<std::vector<double>>(j, "weights", "config");
  if (j.contains("seed")) c.seed = get<uint64_t>(j, "seed", "config");
  if (j.contains("split")) {
    const json& s = j["split"];
    check_keys(s, {"train_fraction", "seed"}, "split");
    if (s.contains("train_fraction")) {
      c.split.train_fraction = get<double>(s, "train_fraction", "split");
      if (!(c.split.train_fraction > 0 && c.split.train_fraction < 1)) {
        fail(ErrorCode::kSchema, "split.train_fraction must lie in (0, 1)");
      }
    }
    if (s.contains("seed")) c.split.seed = get<uint64_t>(s, "seed", "split");
  }
  if (j.contains("knn_neighbours")) {
    c.knn_neighbours = get<size_t>(j, "knn_neighbours", "config");
    if (c.knn_neighbours == 0) config_error("'knn_neighbours' must be positive");
  }
  if (j.contains("averaging")) {
    const auto a = get<std::string>(j, "averaging", "config");
    if (a == "macro") {
      c.averaging = Averaging::kMacro;
    } else if (a == "weighted") {
      c.averaging = Averaging::kWeighted;
    } else {
      config_error("averaging must be 'macro' or 'weighted'");
    }
  }
  c.output_dir = resolve(base_dir, j.value("output_dir", std::string("results")));
  c.export_tables = j.value("export", false);
  c.homogeneity = j.value("homogeneity", false);
  c.trace = j.value("trace", true);
  c.spearman = j.value("spearman", false);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  const std::string base = fs::path(path).parent_path().string();
  return parse_config_json(read_file(path), base.empty() ? "." : base);
}

std::vector<std::string> results_header() {
  return {"dataset",   "algorithm",   "k",           "suppression",      "metric",
          "classifier", "seed",       "accuracy",    "precision",        "recall",
          "f1",         "num_classes", "suppressed_count", "node",       "status",
          "diagnostic"};
}

namespace {

std::string node_text(const std::vector<std::pair<std::string, int>>& node) {
  std::vector<std::string> parts;
  for (const auto& [name, level] : node) parts.push_back(name + ":" + std::to_string(level));
  return join(parts, "|");
}

std::vector<std::pair<std::string, int>> parse_node_text(const std::string& text) {
  std::vector<std::pair<std::string, int>> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '|')) {
    const auto colon = part.rfind(':');
    if (colon == std::string::npos) fail(ErrorCode::kParse, "bad node entry '" + part + "'");
    auto level = parse_number(part.substr(colon + 1));
    if (!level) fail(ErrorCode::kParse, "bad node level in '" + part + "'");
    out.emplace_back(part.substr(0, colon), static_cast<int>(*level));
  }
  return out;
}

}  // namespace

std::vector<std::string> record_fields(const RunRecord& r) {
  auto num = [](const std::optional<EvalReport>& e, double EvalReport::*field) {
    return e ? format_number((*e).*field) : std::string();
  };
  return {r.dataset,
          r.algorithm,
          std::to_string(r.k),
          format_number(r.suppression),
          r.metric,
          r.classifier,
          std::to_string(r.seed),
          num(r.eval, &EvalReport::accuracy),
          num(r.eval, &EvalReport::precision),
          num(r.eval, &EvalReport::recall),
          num(r.eval, &EvalReport::f1),
          std::to_string(r.num_classes),
          std::to_string(r.suppressed_count),
          node_text(r.node),
          r.status,
          r.diagnostic};
}

namespace {

std::ofstream open_out(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) fs::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path);
  return out;
}

void close_out(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) fail(ErrorCode::kIo, "error writing " + path);
}

}  // namespace

void write_results_csv(const std::vector<RunRecord>& records, const std::string& path) {
  auto out = open_out(path);
  write_csv_record(out, results_header());
  for (const auto& r : records) write_csv_record(out, record_fields(r));
  close_out(out, path);
}

std::vector<RunRecord> read_results_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot read " + path);
  std::vector<std::string> f;
  if (!read_csv_record(in, f) || f != results_header()) {
    fail(ErrorCode::kFormat, path + ": not a results file");
  }
  std::vector<RunRecord> out;
  size_t line = 1;
  while (read_csv_record(in, f)) {
    ++line;
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != results_header().size()) {
      fail(ErrorCode::kFormat, path + ":" + std::to_string(line) + ": wrong field count");
    }
    auto number = [&](const std::string& s) {
      auto v = parse_number(s);
      if (!v) fail(ErrorCode::kFormat, path + ":" + std::to_string(line) + ": bad number '" +
                                           s + "'");
      return *v;
    };
    RunRecord r;
    r.dataset = f[0];
    r.algorithm = f[1];
    r.k = static_cast<int64_t>(number(f[2]));
    r.suppression = number(f[3]);
    r.metric = f[4];
    r.classifier = f[5];
    r.seed = static_cast<uint64_t>(number(f[6]));
    if (!f[7].empty()) {
      EvalReport e;
      e.accuracy = number(f[7]);
      e.precision = number(f[8]);
      e.recall = number(f[9]);
      e.f1 = number(f[10]);
      r.eval = e;
    }
    r.num_classes = static_cast<int64_t>(number(f[11]));
    r.suppressed_count = static_cast<int64_t>(number(f[12]));
    r.node = parse_node_text(f[13]);
    r.status = f[14];
    r.diagnostic = f[15];
    out.push_back(std::move(r));
  }
  return out;
}

void write_timings_csv(const std::vector<RunRecord>& records, const std::string& path) {
  auto out = open_out(path);
  write_csv_record(out, {"dataset", "algorithm", "k", "suppression", "metric", "classifier",
                         "anonymise_seconds", "classify_seconds"});
  for (const auto& r : records) {
    char a[32];
    char b[32];
    std::snprintf(a, sizeof a, "%.3f", r.anonymise_seconds);
    std::snprintf(b, sizeof b, "%.3f", r.classify_seconds);
    write_csv_record(out, {r.dataset, r.algorithm, std::to_string(r.k),
                           format_number(r.suppression), r.metric, r.classifier, a, b});
  }
  close_out(out, path);
}

std::unique_ptr<LoadedDataset> load_dataset(const DatasetConfig& config) {
  auto d = std::make_unique<LoadedDataset>();
  d->config = config;
  d->schema = load_schema(config.schema);
  Table t = load_csv(config.csv, d->schema);
  if (!config.target_merges.empty()) t = merge_target_values(t, config.target_merges);
  d->table = std::make_unique<Table>(std::move(t));
  d->hierarchies = load_hierarchies(*d->table, config.hierarchies);
  d->index = std::make_unique<QidIndex>(*d->table, d->hierarchies);
  return d;
}

int64_t count_distinct_classes(const Partition& p) {
  std::set<std::vector<std::string>> seen;
  for (const auto& c : p.classes) {
    std::vector<std::string> labels;
    for (const auto& v : c.signature) labels.push_back(v.label);
    seen.insert(std::move(labels));
  }
  return static_cast<int64_t>(seen.size());
}

void export_anonymised(const Table& table, const Partition& p,
                       const Hierarchies& hierarchies, const std::string& path,
                       const ExportInfo& info) {
  const GeneralisedTable g = generalised_table_from_partition(p, table, hierarchies);
  auto out = open_out(path);
  write_csv_record(out, table.header());
  for (size_t r = 0; r < g.num_rows(); ++r) write_csv_record(out, g.render_row(r));
  close_out(out, path);

  ordered_json meta;
  meta["dataset"] = info.dataset;
  meta["algorithm"] = algorithm_name(p.algorithm);
  meta["k"] = p.k;
  meta["suppression"] = p.max_sup;
  meta["metric"] = metric_name(p.metric);
  meta["seed"] = p.seed;
  if (p.node) {
    ordered_json node = ordered_json::object();
    for (size_t q = 0; q < p.node->size(); ++q) {
      node[hierarchies[q]->attribute()] = (*p.node)[q];
    }
    meta["node"] = node;
  } else {
    meta["node"] = nullptr;
  }
  meta["num_rows"] = p.num_rows;
  meta["num_classes"] = count_distinct_classes(p);
  meta["suppressed_count"] = p.suppressed.size();
  meta["anonymised_before_split"] = info.anonymised_before_split;
  if (p.algorithm == Algorithm::kTdg) meta["farthest_point_rounds"] = p.farthest_point_rounds;
  const std::string meta_path = path + ".meta.json";
  auto m = open_out(meta_path);
  m << meta.dump(2) << "\n";
  close_out(m, meta_path);
}

HomogeneitySummary emit_homogeneity_report(const Partition& p, const Table& table,
                                           const std::string& path) {
  const auto rows = homogeneity_histogram(p, table);
  auto out = open_out(path);
  write_csv_record(out, {"class_id", "size", "homogeneity"});
  double total = 0;
  for (const auto& r : rows) {
    write_csv_record(out, {std::to_string(r.class_id), std::to_string(r.size),
                           format_number(r.homogeneity)});
    total += r.homogeneity;
  }
  close_out(out, path);
  HomogeneitySummary s;
  s.num_classes = static_cast<int64_t>(rows.size());
  s.mean_homogeneity = rows.empty() ? 0.0 : total / static_cast<double>(rows.size());
  ordered_json j;
  j["num_classes"] = s.num_classes;
  j["mean_homogeneity"] = s.mean_homogeneity;
  const std::string summary_path = path + ".summary.json";
  auto m = open_out(summary_path);
  m << j.dump(2) << "\n";
  close_out(m, summary_path);
  return s;
}

std::vector<std::string> emit_generalisation_trace(const std::vector<RunRecord>& records,
                                                   const std::string& dir) {
  // (dataset, suppression, metric) -> k -> record; knn rows win over others.
  std::map<std::tuple<std::string, double, std::string>, std::map<int64_t, const RunRecord*>>
      runs;
  size_t skipped = 0;
  for (const auto& r : records) {
    if (r.algorithm != "ola" || r.status != "ok") {
      if (r.algorithm != "none") ++skipped;
      continue;
    }
    auto& slot = runs[{r.dataset, r.suppression, r.metric}][r.k];
    if (slot == nullptr || (r.classifier == "knn" && slot->classifier != "knn")) slot = &r;
  }
  if (skipped > 0) {
    std::cerr << "trace: skipped " << skipped << " non-OLA or failed records\n";
  }
  std::vector<std::string> written;
  for (const auto& [key, by_k] : runs) {
    const auto& [dataset, sup, metric] = key;
    const std::string path = (fs::path(dir) / ("trace_" + dataset + "_" + metric + "_sup" +
                                               format_number(sup) + ".csv"))
                                 .string();
    auto out = open_out(path);
    std::vector<std::string> header{"k"};
    const RunRecord& first = *by_k.begin()->second;
    for (const auto& [name, level] : first.node) header.push_back(name);
    header.push_back("suppressed_count");
    header.push_back("f1");
    write_csv_record(out, header);
    for (const auto& [k, r] : by_k) {
      std::vector<std::string> row{std::to_string(k)};
      for (const auto& [name, level] : r->node) row.push_back(std::to_string(level));
      row.push_back(std::to_string(r->suppressed_count));
      row.push_back(r->eval ? format_number(r->eval->f1) : "");
      write_csv_record(out, row);
    }
    close_out(out, path);
    written.push_back(path);
  }
  return written;
}

std::vector<SpearmanRow> spearman_report(const Table& table,
                                         const std::optional<std::string>& positive_class) {
  const EncodedData enc = encode_for_ml(table);
  std::vector<std::string> labels(enc.y);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::vector<double> target;
  target.reserve(enc.y.size());
  for (const auto& y : enc.y) {
    if (positive_class) {
      target.push_back(y == *positive_class ? 1.0 : 0.0);
    } else {
      target.push_back(static_cast<double>(
          std::lower_bound(labels.begin(), labels.end(), y) - labels.begin()));
    }
  }
  std::vector<SpearmanRow> out;
  std::vector<double> column(enc.x.rows());
  for (size_t j = 0; j < enc.x.cols(); ++j) {
    for (size_t r = 0; r < enc.x.rows(); ++r) column[r] = enc.x.at(r, j);
    out.push_back({enc.x.feature_names[j], spearman_rank_correlation(column, target)});
  }
  return out;
}

void write_spearman_csv(const std::vector<SpearmanRow>& rows, const std::string& path) {
  auto out = open_out(path);
  write_csv_record(out, {"feature", "rho", "defined"});
  for (const auto& r : rows) {
    write_csv_record(out, {r.feature, r.rho ? format_number(*r.rho) : "",
                           r.rho ? "true" : "false"});
  }
  close_out(out, path);
}

namespace {

struct Prepared {
  const LoadedDataset* data = nullptr;
  std::vector<size_t> train;
  std::vector<size_t> test;
};

struct Cell {
  size_t dataset = 0;
  Algorithm algorithm = Algorithm::kOla;
  MetricKind metric = MetricKind::kGweight;
  double suppression = 0;
  int64_t k = 2;
  bool baseline = false;
};

struct CellOutput {
  std::vector<RunRecord> records;
  std::optional<HomogeneitySummary> homogeneity;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string cell_stem(const std::string& dataset, const Cell& c) {
  return dataset + "_" + algorithm_name(c.algorithm) + "_" + metric_name(c.metric) + "_sup" +
         format_number(c.suppression) + "_k" + std::to_string(c.k);
}

struct ClassifiedScores {
  EvalReport report;
  double seconds = 0;
};

ClassifiedScores classify(const EncodedData& enc, const Prepared& prep,
                          const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const EncodedData train = select_rows(enc, prep.train);
  const EncodedData test = select_rows(enc, prep.test);
  const size_t n = std::min(config.knn_neighbours, train.x.rows());
  const auto pred = knn_classify(train.x, train.y, test.x, n);
  ClassifiedScores s;
  s.report = evaluate(pred, test.y, prep.data->positive_class(), config.averaging);
  s.seconds = seconds_since(t0);
  return s;
}

// Oracle cross-checks of one cell; returns a diagnostic or "".
std::string oracle_checks(const LoadedDataset& d, const Partition& p,
                          const GeneralisedTable& g, const AlgoParams& params,
                          int64_t num_classes) {
  std::vector<std::vector<std::string>> kept;
  std::vector<uint8_t> suppressed(d.table->num_rows(), 0);
  for (size_t id : p.suppressed) suppressed[id] = 1;
  for (size_t r = 0; r < g.num_rows(); ++r) {
    if (suppressed[r]) continue;
    std::vector<std::string> sig;
    for (const auto& v : g.qid_values[r]) sig.push_back(v.label);
    kept.push_back(std::move(sig));
  }
  const GroupCensus census = brute_force_census(kept);
  if (static_cast<int64_t>(census.num_groups()) != num_classes) {
    return "census finds " + std::to_string(census.num_groups()) + " classes, run reports " +
           std::to_string(num_classes);
  }
  if (!kept.empty() && census.min_group_size < p.k) {
    return "census finds a class of size " + std::to_string(census.min_group_size);
  }
  const std::vector<Domain>& domains = d.index->domains();
  for (const auto& c : p.classes) {
    const double main = ncp_class(c.signature, d.hierarchies, domains, params.weights);
    const double naive = naive_ncp(c.signature, *d.table, d.hierarchies, params.weights);
    if (main != naive) return "NCP differs from the naive recomputation";
  }
  if (p.algorithm != Algorithm::kOla) return "";
  const auto heights = d.index->heights();
  const auto n = static_cast<int64_t>(p.num_rows);
  const auto s = static_cast<int64_t>(p.suppressed.size());
  double main = 0;
  switch (params.metric) {
    case MetricKind::kPrec: main = metric_prec(*p.node, heights, n, s).value; break;
    case MetricKind::kGweight: main = metric_gweight(*p.node, heights, params.weights).value; break;
    case MetricKind::kAecs: main = metric_aecs(p).value; break;
    case MetricKind::kDm: main = metric_dm(p, n).value; break;
  }
  if (main != naive_metric(p, d.hierarchies, params.metric, params.weights).value) {
    return "loss differs from the naive recomputation";
  }
  size_t lattice = 1;
  for (int h : heights) lattice *= static_cast<size_t>(h + 1);
  if (lattice <= kExhaustiveLatticeLimit) {
    const ExhaustiveResult best = exhaustive_ola(*d.table, d.hierarchies, params);
    if (best.loss != main) {
      return "exhaustive search finds loss " + format_number(best.loss) + ", OLA " +
             format_number(main);
    }
  }
  return "";
}

CellOutput run_baseline(const Prepared& prep, const ExperimentConfig& config) {
  const LoadedDataset& d = *prep.data;
  CellOutput out;
  RunRecord base;
  base.dataset = d.config.name;
  base.algorithm = "none";
  base.k = 1;
  base.seed = config.seed;
  std::set<std::vector<std::string>> distinct;
  for (size_t r = 0; r < d.table->num_rows(); ++r) {
    std::vector<std::string> sig;
    for (size_t c : d.table->qid_columns()) sig.push_back(d.table->cell(r, c));
    distinct.insert(std::move(sig));
  }
  base.num_classes = static_cast<int64_t>(distinct.size());
  if (std::count(config.classifiers.begin(), config.classifiers.end(), Classifier::kKnn)) {
    RunRecord r = base;
    r.classifier = "knn";
    try {
      const auto scores = classify(encode_for_ml(*d.table), prep, config);
      r.eval = scores.report;
      r.classify_seconds = scores.seconds;
    } catch (const std::exception& e) {
      r.status = "error";
      r.diagnostic = e.what();
    }
    out.records.push_back(std::move(r));
  }
  RunRecord z = base;
  z.classifier = "zero_rule";
  std::vector<std::string> test_labels;
  for (size_t id : prep.test) test_labels.push_back(d.table->cell(id, d.table->target_column()));
  const ZeroRule rule = zero_rule_predict(test_labels);
  z.eval = evaluate(rule.predictions, test_labels, d.positive_class(), config.averaging);
  out.records.push_back(std::move(z));
  return out;
}

CellOutput run_cell(const Cell& cell, const Prepared& prep, const ExperimentConfig& config,
                    const SweepOptions& options) {
  const LoadedDataset& d = *prep.data;
  RunRecord base;
  base.dataset = d.config.name;
  base.algorithm = algorithm_name(cell.algorithm);
  base.k = cell.k;
  base.suppression = cell.suppression;
  base.metric = metric_name(cell.metric);
  base.seed = config.seed;

  std::vector<Classifier> wanted;
  for (Classifier c : config.classifiers) {
    if (c != Classifier::kZeroRule) wanted.push_back(c);
  }
  CellOutput out;
  auto fail_all = [&](const std::string& status, const std::string& why) {
    for (Classifier c : wanted) {
      RunRecord r = base;
      r.classifier = classifier_name(c);
      r.status = status;
      r.diagnostic = why;
      out.records.push_back(std::move(r));
    }
    return out;
  };
  if (wanted.empty()) return out;

  AlgoParams params;
  params.k = cell.k;
  params.max_sup = cell.suppression;
  params.metric = cell.metric;
  params.seed = config.seed;
  params.weights = config.weights;

  const auto t0 = std::chrono::steady_clock::now();
  Partition p;
  try {
    p = anonymise(*d.index, cell.algorithm, params);
  } catch (const std::exception& e) {
    return fail_all("error", e.what());
  }
  base.anonymise_seconds = seconds_since(t0);
  const VerifyResult v = verify_k_anonymity(p, *d.table, d.hierarchies, cell.k);
  if (!v.ok) return fail_all("verify_failed", v.diagnostic);
  base.num_classes = count_distinct_classes(p);
  base.suppressed_count = static_cast<int64_t>(p.suppressed.size());
  if (p.node) {
    for (size_t q = 0; q < p.node->size(); ++q) {
      base.node.emplace_back(d.hierarchies[q]->attribute(), (*p.node)[q]);
    }
  }
  try {
    const GeneralisedTable g = generalised_table_from_partition(p, *d.table, d.hierarchies);
    if (options.verify) {
      const std::string why = oracle_checks(d, p, g, params, base.num_classes);
      if (!why.empty()) return fail_all("oracle_mismatch", why);
    }
    const std::string stem = cell_stem(d.config.name, cell);
    const bool export_only =
        std::count(wanted.begin(), wanted.end(), Classifier::kExportOnly) > 0;
    if (config.export_tables || export_only) {
      export_anonymised(*d.table, p, d.hierarchies,
                        (fs::path(config.output_dir) / "exports" / (stem + ".csv")).string(),
                        {d.config.name, true});
    }
    if (config.homogeneity) {
      out.homogeneity = emit_homogeneity_report(
          p, *d.table, (fs::path(config.output_dir) / "homogeneity" / (stem + ".csv")).string());
    }
    std::optional<EncodedData> enc;
    for (Classifier c : wanted) {
      RunRecord r = base;
      r.classifier = classifier_name(c);
      if (c == Classifier::kKnn) {
        if (!enc) enc = encode_for_ml(g);
        const auto scores = classify(*enc, prep, config);
        r.eval = scores.report;
        r.classify_seconds = scores.seconds;
      }
      out.records.push_back(std::move(r));
    }
  } catch (const std::exception& e) {
    out.records.clear();
    return fail_all("error", e.what());
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& config, const SweepOptions& options) {
  std::vector<std::unique_ptr<LoadedDataset>> datasets;
  std::vector<Prepared> prepared;
  for (const auto& dc : config.datasets) datasets.push_back(load_dataset(dc));
  for (const auto& d : datasets) {
    Prepared p;
    p.data = d.get();
    std::tie(p.train, p.test) = split_train_test(*d->table, config.split);
    prepared.push_back(std::move(p));
  }

  std::vector<Cell> cells;
  for (size_t di = 0; di < datasets.size(); ++di) {
    Cell b;
    b.dataset = di;
    b.baseline = true;
    cells.push_back(b);
    for (Algorithm a : config.algorithms) {
      // Only OLA reads the metric and the suppression limit.
      const bool ola = a == Algorithm::kOla;
      std::vector<MetricKind> metrics =
          ola ? config.metrics : std::vector<MetricKind>{config.metrics.front()};
      std::vector<double> sups = config.suppression_levels;
      std::sort(sups.begin(), sups.end());
      sups.erase(std::unique(sups.begin(), sups.end()), sups.end());
      if (!ola) sups = {0.0};
      for (MetricKind m : metrics) {
        for (double s : sups) {
          for (int64_t k : config.k_values) {
            cells.push_back({di, a, m, s, k, false});
          }
        }
      }
    }
  }

  std::vector<CellOutput> outputs(cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < cells.size(); i = next++) {
      const Cell& c = cells[i];
      const Prepared& prep = prepared[c.dataset];
      outputs[i] = c.baseline ? run_baseline(prep, config) : run_cell(c, prep, config, options);
    }
  };
  const size_t jobs = std::max<size_t>(1, std::min(options.jobs, cells.size()));
  std::vector<std::thread> threads;
  for (size_t t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  SweepResult result;
  for (auto& o : outputs) {
    for (auto& r : o.records) {
      if (r.status != "ok") ++result.failures;
      result.records.push_back(std::move(r));
    }
  }
  const fs::path dir(config.output_dir);
  write_results_csv(result.records, (dir / "results.csv").string());
  write_timings_csv(result.records, (dir / "timings.csv").string());
  if (config.trace) emit_generalisation_trace(result.records, (dir / "trace").string());
  if (config.homogeneity) {
    const std::string path = (dir / "homogeneity_summary.csv").string();
    auto out = open_out(path);
    write_csv_record(out, {"dataset", "algorithm", "k", "suppression", "metric",
                           "num_classes", "mean_homogeneity"});
    for (size_t i = 0; i < cells.size(); ++i) {
      if (!outputs[i].homogeneity) continue;
      const Cell& c = cells[i];
      write_csv_record(out, {datasets[c.dataset]->config.name, algorithm_name(c.algorithm),
                             std::to_string(c.k), format_number(c.suppression),
                             metric_name(c.metric),
                             std::to_string(outputs[i].homogeneity->num_classes),
                             format_number(outputs[i].homogeneity->mean_homogeneity)});
    }
    close_out(out, path);
  }
  if (config.spearman) {
    for (const auto& d : datasets) {
      write_spearman_csv(spearman_report(*d->table, d->positive_class()),
                         (dir / ("spearman_" + d->config.name + ".csv")).string());
    }
  }
  return result;
}

}  // namespace anonylat
