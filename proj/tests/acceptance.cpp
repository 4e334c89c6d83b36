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


// Acceptance checks. Prints one PASS/FAIL line per criterion; exits non-zero
// if any criterion fails. Criterion numbers given as arguments restrict the
// run to those criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "anonymizers.hpp"
#include "fixtures.hpp"
#include "loss_metrics.hpp"
#include "ml.hpp"
#include "oracle.hpp"
#include "runner.hpp"

using namespace anonylat;
using namespace anonylat::testing;
namespace fs = std::filesystem;

namespace {

constexpr const char* kDatasets[] = {"adult", "cahousing", "cmc", "mgm"};
constexpr Algorithm kAlgorithms[] = {Algorithm::kOla, Algorithm::kMondrian, Algorithm::kTdg,
                                     Algorithm::kCb};
constexpr MetricKind kMetrics[] = {MetricKind::kPrec, MetricKind::kGweight, MetricKind::kAecs,
                                   MetricKind::kDm};

struct Outcome {
  bool pass = false;
  std::string summary;
};

void note(const std::string& text) { std::printf("    %s\n", text.c_str()); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

DatasetConfig dataset_config(const std::string& name) {
  const std::string dir = data_dir() + "/" + name;
  DatasetConfig c;
  c.name = name;
  c.csv = dir + "/" + name + ".csv";
  c.schema = dir + "/schema.json";
  c.hierarchies = dir + "/hierarchies";
  return c;
}

std::map<std::string, std::unique_ptr<LoadedDataset>>& cache() {
  static std::map<std::string, std::unique_ptr<LoadedDataset>> datasets;
  return datasets;
}

const LoadedDataset& dataset(const std::string& name) {
  auto& slot = cache()[name];
  if (!slot) slot = load_dataset(dataset_config(name));
  return *slot;
}

AlgoParams params_for(int64_t k, double max_sup = 0, MetricKind m = MetricKind::kGweight,
                      uint64_t seed = 0) {
  AlgoParams p;
  p.k = k;
  p.max_sup = max_sup;
  p.metric = m;
  p.seed = seed;
  return p;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "anonylat_acceptance" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// 1. Safety suite.
Outcome safety() {
  const auto start = std::chrono::steady_clock::now();
  const size_t expected_rows[] = {30162, 20640, 1473, 830};
  size_t runs = 0;
  size_t failures = 0;
  for (size_t d = 0; d < 4; ++d) {
    const LoadedDataset& ds = dataset(kDatasets[d]);
    if (ds.table->num_rows() != expected_rows[d]) {
      note(std::string(kDatasets[d]) + ": " + std::to_string(ds.table->num_rows()) + " rows");
      ++failures;
    }
    const int64_t limit = suppression_limit(ds.table->num_rows(), 0.03);
    for (Algorithm a : kAlgorithms) {
      for (int64_t k : {2, 5, 10, 25, 50, 100}) {
        const auto t0 = std::chrono::steady_clock::now();
        const Partition p = anonymise(*ds.index, a, params_for(k, 0.03));
        const VerifyResult v = verify_k_anonymity(p, *ds.table, ds.hierarchies, k);
        const auto sup = static_cast<int64_t>(p.suppressed.size());
        const bool ok = v.ok && (a == Algorithm::kOla ? sup <= limit : sup == 0);
        ++runs;
        if (!ok) {
          ++failures;
          note(std::string(kDatasets[d]) + " " + algorithm_name(a) + " k=" + std::to_string(k) +
               ": " + (v.ok ? "suppressed " + std::to_string(sup) : v.diagnostic));
        }
        if (seconds_since(t0) > 20) {
          note(std::string(kDatasets[d]) + " " + algorithm_name(a) + " k=" + std::to_string(k) +
               fmt(": %.1f s", seconds_since(t0)));
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  Outcome o;
  o.pass = failures == 0 && elapsed < 600;
  o.summary = std::to_string(runs - failures) + "/" + std::to_string(runs) +
              " runs verified, OLA suppression <= 3%" + fmt(", %.0f s (limit 600 s)", elapsed);
  return o;
}

// Table restricted to `qids` (indices into the QID list) plus the target, on
// the given rows.
struct SubTable {
  std::unique_ptr<Table> table;
  Hierarchies hierarchies;
};

SubTable subsample(const LoadedDataset& ds, const std::vector<size_t>& qids,
                   const std::vector<size_t>& rows) {
  const Table& t = *ds.table;
  std::vector<size_t> cols;
  for (size_t q : qids) cols.push_back(t.qid_columns()[q]);
  cols.push_back(t.target_column());
  std::vector<AttributeSchema> schema;
  for (size_t c : cols) schema.push_back(t.attribute(c));
  std::vector<std::vector<std::string>> data;
  for (size_t r : rows) {
    std::vector<std::string> row;
    for (size_t c : cols) row.push_back(t.cell(r, c));
    data.push_back(std::move(row));
  }
  SubTable s;
  s.table = std::make_unique<Table>(schema, data);
  for (size_t q : qids) s.hierarchies.push_back(ds.hierarchies[q]);
  return s;
}

double ola_loss(const Partition& p, const QidIndex& index, MetricKind m) {
  const auto n = static_cast<int64_t>(index.num_rows());
  switch (m) {
    case MetricKind::kPrec:
      return metric_prec(*p.node, index.heights(), n, static_cast<int64_t>(p.suppressed.size()))
          .value;
    case MetricKind::kGweight: return metric_gweight(*p.node, index.heights()).value;
    case MetricKind::kAecs: return metric_aecs(p).value;
    case MetricKind::kDm: return metric_dm(p, n).value;
  }
  return 0;
}

// 2. OLA optimality against exhaustive search.
Outcome ola_optimality() {
  std::mt19937_64 rng(2026);
  size_t cases = 0;
  size_t mismatches = 0;
  for (int sample = 0; sample < 20; ++sample) {
    const LoadedDataset& ds = dataset(kDatasets[uniform_index(rng, 4)]);
    const auto& heights = ds.index->heights();
    std::vector<size_t> qids;
    while (true) {
      std::vector<size_t> all(heights.size());
      for (size_t i = 0; i < all.size(); ++i) all[i] = i;
      for (size_t i = all.size() - 1; i > 0; --i) std::swap(all[i], all[uniform_index(rng, i + 1)]);
      const size_t m = 1 + uniform_index(rng, std::min<size_t>(4, all.size()));
      qids.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m));
      std::sort(qids.begin(), qids.end());
      size_t size = 1;
      for (size_t q : qids) size *= static_cast<size_t>(heights[q] + 1);
      if (size <= 500) break;
    }
    const size_t n = 100 + uniform_index(rng, 901);
    std::vector<size_t> ids(ds.table->num_rows());
    for (size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    for (size_t i = 0; i < n; ++i) std::swap(ids[i], ids[i + uniform_index(rng, ids.size() - i)]);
    ids.resize(n);
    std::sort(ids.begin(), ids.end());
    const SubTable sub = subsample(ds, qids, ids);
    const QidIndex index(*sub.table, sub.hierarchies);
    for (MetricKind m : kMetrics) {
      for (double sup : {0.0, 0.03}) {
        for (int64_t k : {2, 5, 10}) {
          const AlgoParams params = params_for(k, sup, m);
          const double main = ola_loss(ola_anonymise(index, params), index, m);
          const ExhaustiveResult ex = exhaustive_ola(*sub.table, sub.hierarchies, params);
          ++cases;
          if (main != ex.loss) {
            ++mismatches;
            note(ds.config.name + " sample " + std::to_string(sample) + " " + metric_name(m) +
                 " k=" + std::to_string(k) + fmt(" sup=%.2f", sup) + fmt(": ola %.17g", main) +
                 fmt(" exhaustive %.17g", ex.loss));
          }
        }
      }
    }
  }
  Outcome o;
  o.pass = mismatches == 0;
  o.summary = std::to_string(cases - mismatches) + "/" + std::to_string(cases) +
              " (table, metric, max_sup, k) cases equal exactly";
  return o;
}

std::string join_ints(const std::vector<int64_t>& v) {
  std::vector<std::string> s;
  for (int64_t x : v) s.push_back(std::to_string(x));
  return join(s, ", ");
}

// 3. Mondrian class counts on mgm.
Outcome mondrian_mgm() {
  const LoadedDataset& ds = dataset("mgm");
  const std::vector<int64_t> ks{58, 59, 62, 72};
  const std::vector<int64_t> expected{5, 7, 3, 2};
  std::vector<int64_t> got;
  for (int64_t k : ks) {
    got.push_back(count_distinct_classes(mondrian_anonymise(*ds.index, params_for(k))));
  }
  Outcome o;
  o.pass = got == expected;
  o.summary = "classes at k=58,59,62,72: [" + join_ints(got) + "], expected [" +
              join_ints(expected) + "]";
  return o;
}

// 4. Mondrian class-count drop on cahousing.
Outcome mondrian_cahousing() {
  const LoadedDataset& ds = dataset("cahousing");
  std::map<int64_t, Partition> parts;
  std::map<int64_t, int64_t> counts;
  for (int64_t k = 75; k <= 85; ++k) {
    parts[k] = mondrian_anonymise(*ds.index, params_for(k));
    counts[k] = count_distinct_classes(parts[k]);
  }
  std::vector<int64_t> series;
  for (const auto& [k, c] : counts) series.push_back(c);
  note("classes at k=75..85: [" + join_ints(series) + "]");
  const bool exact = counts[78] == 143 && counts[79] == 85;
  size_t lat = 0;
  for (size_t q = 0; q < ds.index->num_qids(); ++q) {
    if (ds.hierarchies[q]->attribute() == "latitude") lat = q;
  }
  const Domain dom = ds.index->domain(lat);
  bool fallback = false;
  double best_drop = 0;
  int64_t best_k = 0;
  for (int64_t k = 76; k <= 85; ++k) {
    const double drop = 1.0 - static_cast<double>(counts[k]) / static_cast<double>(counts[k - 1]);
    if (drop > best_drop) {
      best_drop = drop;
      best_k = k;
    }
    if (drop < 0.3) continue;
    bool full = true;
    for (const auto& ec : parts[k].classes) {
      const auto& iv = ec.signature[lat].interval;
      full = full && iv && iv->lo <= dom.min && iv->hi >= dom.max;
    }
    fallback = fallback || full;
  }
  Outcome o;
  o.pass = exact || fallback;
  o.summary = "k=78 -> " + std::to_string(counts[78]) + ", k=79 -> " + std::to_string(counts[79]) +
              " (expected 143 -> 85); largest drop " + fmt("%.1f%%", 100 * best_drop) +
              " at k=" + std::to_string(best_k) + " (fallback needs >= 30% with latitude fully generalised)";
  return o;
}

// 5. Spearman correlations on adult.
Outcome spearman_adult() {
  const LoadedDataset& ds = dataset("adult");
  const auto rows = spearman_report(*ds.table, ds.positive_class());
  const std::vector<std::pair<std::string, double>> expected{
      {"marital-status=Married-civ-spouse", 0.45},
      {"sex=Male", 0.22},
      {"age", 0.28},
      {"marital-status=Never-married", -0.32},
      {"occupation=Exec-managerial", 0.21}};
  bool pass = true;
  std::vector<std::string> parts;
  for (const auto& [name, want] : expected) {
    const auto it = std::find_if(rows.begin(), rows.end(),
                                 [&](const SpearmanRow& r) { return r.feature == name; });
    if (it == rows.end() || !it->rho) {
      pass = false;
      parts.push_back(name + " missing");
      continue;
    }
    const bool ok = std::fabs(*it->rho - want) <= 0.01 + 1e-12;
    pass = pass && ok;
    parts.push_back(name + fmt(" %.4f", *it->rho) + fmt(" (%.2f)", want));
  }
  Outcome o;
  o.pass = pass;
  o.summary = join(parts, ", ") + ", tolerance 0.01";
  return o;
}

// 6. OLA generalisation trace on adult.
Outcome ola_trace() {
  const fs::path out = scratch("trace");
  ExperimentConfig c;
  c.datasets.push_back(dataset_config("adult"));
  c.algorithms = {Algorithm::kOla};
  for (int64_t k = 2; k <= 100; ++k) c.k_values.push_back(k);
  c.suppression_levels = {0.03};
  c.metrics = {MetricKind::kGweight};
  c.classifiers = {Classifier::kKnn};
  c.output_dir = out.string();
  const SweepResult r = run_sweep(c, {});
  const LoadedDataset& ds = dataset("adult");
  int marital_height = 0;
  for (const auto& h : ds.hierarchies) {
    if (h->attribute() == "marital-status") marital_height = h->height();
  }
  std::map<int64_t, double> f1;
  std::map<int64_t, int> marital;
  for (const auto& rec : r.records) {
    if (rec.algorithm != "ola" || rec.status != "ok" || !rec.eval) continue;
    f1[rec.k] = rec.eval->f1;
    for (const auto& [name, level] : rec.node) {
      if (name == "marital-status") marital[rec.k] = level;
    }
  }
  int64_t first_full = 0;
  for (const auto& [k, level] : marital) {
    if (level == marital_height) {
      first_full = k;
      break;
    }
  }
  double worst = 0;
  int64_t worst_k = 0;
  for (int64_t k = 3; k <= 100; ++k) {
    if (!f1.count(k) || !f1.count(k - 1)) continue;
    const double drop = f1[k - 1] - f1[k];
    if (drop > worst) {
      worst = drop;
      worst_k = k;
    }
  }
  note("marital-status level at k=56: " + std::to_string(marital[56]) + " of " +
       std::to_string(marital_height) + "; trace in " + (out / "trace").string());
  const bool full_at_56 = marital.count(56) && marital[56] == marital_height;
  const bool drop_in_range = worst_k >= 56 && worst_k <= 68;
  Outcome o;
  o.pass = r.failures == 0 && full_at_56 && drop_in_range;
  o.summary = "marital-status fully generalised first at k=" +
              (first_full ? std::to_string(first_full) : std::string("never")) +
              " (expected 56); largest F1 drop " + fmt("%.4f", worst) + " at k=" +
              std::to_string(worst_k - 1) + "->" + std::to_string(worst_k) +
              " (expected within [56, 68])";
  return o;
}

// 7. Metric oracle equivalence.
Outcome metric_oracle() {
  std::map<std::string, size_t> mismatches{{"prec", 0}, {"gweight", 0}, {"aecs", 0}, {"dm", 0},
                                           {"ncp", 0}};
  std::map<std::string, size_t> checked = mismatches;
  std::mt19937_64 rng(77);
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    const size_t rows = 5 + uniform_index(rng, 46);
    const size_t qids = 1 + uniform_index(rng, 4);
    const Instance inst = random_instance(10000 + seed, rows, qids);
    const QidIndex index(*inst.table, inst.hierarchies);
    const auto heights = index.heights();
    const Lattice lat(heights);
    const LatticeNode node = lat.node(uniform_index(rng, lat.size()));
    const auto k = static_cast<int64_t>(1 + uniform_index(rng, 5));
    const double sup = std::vector<double>{0, 0.05, 0.1, 0.3}[uniform_index(rng, 4)];
    std::vector<double> weights;
    if (seed % 2) {
      for (size_t q = 0; q < qids; ++q) weights.push_back(1.0 + static_cast<double>(uniform_index(rng, 4)));
    } else if (seed % 4 == 2) {
      for (size_t q = 0; q < qids; ++q) weights.push_back(0.25 * static_cast<double>(1 + uniform_index(rng, 8)));
    }
    const auto n = static_cast<int64_t>(rows);

    // Main path: hashed census of the node.
    const NodeSummary s = summarise(census(index, node), rows, k, sup);
    // Oracle path: applied table, brute-force grouping.
    const GroupCensus g = brute_force_census(apply_node(*inst.table, node, inst.hierarchies));
    std::vector<int64_t> kept;
    int64_t suppressed = 0;
    for (int64_t c : g.counts) {
      if (c >= k) kept.push_back(c);
      else suppressed += c;
    }
    auto record = [&](const char* kind, bool equal) {
      ++checked[kind];
      if (!equal) ++mismatches[kind];
    };
    record("prec", metric_prec(node, heights, n, s.suppressed).value ==
                       naive_prec(node, heights, n, suppressed));
    record("gweight", metric_gweight(node, heights, weights).value ==
                          naive_gweight(node, heights, weights));
    if (!kept.empty()) {
      record("aecs", metric_aecs(n - s.suppressed, s.classes).value == naive_aecs(kept));
    }
    record("dm", metric_dm(s.sum_squares, s.suppressed, n).value ==
                     naive_dm(kept, suppressed, n));

    const NcpModel model(index, weights);
    std::vector<size_t> members;
    const size_t size = 1 + uniform_index(rng, rows);
    for (size_t i = 0; i < size; ++i) members.push_back(uniform_index(rng, rows));
    const auto sig = model.signature(model.summarise(members));
    record("ncp", ncp_class(sig, inst.hierarchies, index.domains(), weights) ==
                      naive_ncp(sig, *inst.table, inst.hierarchies, weights));
  }
  bool pass = true;
  std::vector<std::string> parts;
  for (const auto& [kind, bad] : mismatches) {
    pass = pass && bad == 0 && checked[kind] >= 500;
    parts.push_back(kind + " " + std::to_string(checked[kind] - bad) + "/" +
                    std::to_string(checked[kind]));
  }
  Outcome o;
  o.pass = pass;
  o.summary = join(parts, ", ") + " exact";
  return o;
}

// 8. Determinism of TDG and CB.
Outcome determinism() {
  const fs::path dir = scratch("determinism");
  bool identical = true;
  size_t compared = 0;
  for (const char* name : {"cmc", "mgm"}) {
    const LoadedDataset& ds = dataset(name);
    for (Algorithm a : {Algorithm::kTdg, Algorithm::kCb}) {
      for (int64_t k : {3, 10}) {
        std::string bytes[2];
        for (int run = 0; run < 2; ++run) {
          const fs::path p = dir / (std::string(name) + algorithm_name(a) + std::to_string(run) + ".csv");
          export_anonymised(*ds.table, anonymise(*ds.index, a, params_for(k, 0, MetricKind::kGweight, 42)),
                            ds.hierarchies, p.string(), {name, true});
          bytes[run] = read_file(p.string()) + read_file(p.string() + ".meta.json");
        }
        identical = identical && bytes[0] == bytes[1];
        ++compared;
      }
    }
  }
  std::map<Algorithm, int> changed;
  for (uint64_t f = 0; f < 10; ++f) {
    const Instance inst = random_instance(500 + f, 60, 3);
    const QidIndex index(*inst.table, inst.hierarchies);
    for (Algorithm a : {Algorithm::kTdg, Algorithm::kCb}) {
      const Partition x = anonymise(index, a, params_for(3, 0, MetricKind::kGweight, 1));
      const Partition y = anonymise(index, a, params_for(3, 0, MetricKind::kGweight, 2));
      bool same = x.classes.size() == y.classes.size();
      for (size_t i = 0; same && i < x.classes.size(); ++i) {
        same = x.classes[i].members == y.classes[i].members;
      }
      if (!same) ++changed[a];
    }
  }
  Outcome o;
  o.pass = identical && changed[Algorithm::kTdg] > 0 && changed[Algorithm::kCb] > 0;
  o.summary = std::to_string(compared) + " export pairs " +
              (identical ? "byte-identical" : "DIFFER") + "; seed change alters the partition on " +
              std::to_string(changed[Algorithm::kTdg]) + "/10 fixtures (tdg), " +
              std::to_string(changed[Algorithm::kCb]) + "/10 (cb)";
  return o;
}

// 9. Baselines.
Outcome baselines() {
  const fs::path out = scratch("baselines");
  ExperimentConfig c;
  for (const char* name : kDatasets) c.datasets.push_back(dataset_config(name));
  c.algorithms = {Algorithm::kOla, Algorithm::kMondrian, Algorithm::kTdg, Algorithm::kCb};
  c.k_values = {1};
  c.classifiers = {Classifier::kKnn, Classifier::kZeroRule};
  c.output_dir = out.string();
  const SweepResult r = run_sweep(c, {});
  bool zero_ok = true;
  bool identity_ok = true;
  std::vector<std::string> parts;
  for (const char* name : kDatasets) {
    const LoadedDataset& ds = dataset(name);
    const auto [train, test] = split_train_test(*ds.table, c.split);
    std::map<std::string, size_t> freq;
    for (size_t id : test) ++freq[ds.table->cell(id, ds.table->target_column())];
    size_t modal = 0;
    for (const auto& [label, count] : freq) modal = std::max(modal, count);
    const double expected = static_cast<double>(modal) / static_cast<double>(test.size());
    const RunRecord* base = nullptr;
    for (const auto& rec : r.records) {
      if (rec.dataset != name) continue;
      if (rec.classifier == "zero_rule") {
        zero_ok = zero_ok && rec.eval && rec.eval->accuracy == expected;
      }
      if (rec.algorithm == "none" && rec.classifier == "knn") base = &rec;
    }
    if (!base || !base->eval) {
      identity_ok = false;
      continue;
    }
    for (const auto& rec : r.records) {
      if (rec.dataset != name || rec.algorithm == "none" || rec.classifier != "knn") continue;
      const bool same = rec.eval && rec.eval->accuracy == base->eval->accuracy &&
                        rec.eval->precision == base->eval->precision &&
                        rec.eval->recall == base->eval->recall && rec.eval->f1 == base->eval->f1;
      if (!same) note(std::string(name) + " " + rec.algorithm + " k=1 differs from the baseline");
      identity_ok = identity_ok && same;
    }
    parts.push_back(std::string(name) + fmt(" zero-rule %.4f", expected) +
                    fmt(" knn-f1 %.4f", base->eval->f1));
  }
  Outcome o;
  o.pass = r.failures == 0 && zero_ok && identity_ok;
  o.summary = std::string("zero-rule = modal frequency: ") + (zero_ok ? "yes" : "NO") +
              "; k=1 = baseline for all algorithms: " + (identity_ok ? "yes" : "NO") + " (" +
              join(parts, "; ") + ")";
  return o;
}

// 10. Encoding guard.
Outcome encoding_guard() {
  const LoadedDataset& ds = dataset("adult");
  size_t numeric_attrs = 0;
  for (const auto& a : ds.table->schema()) {
    if (a.kind == Kind::kNumerical && a.role != Role::kTarget) ++numeric_attrs;
  }
  bool pass = true;
  std::vector<std::string> parts;
  for (Algorithm a : kAlgorithms) {
    size_t cols[2];
    size_t width[2];
    int i = 0;
    for (int64_t k : {2, 100}) {
      const Partition p = anonymise(*ds.index, a, params_for(k, 0.03));
      const EncodedData d = encode_for_ml(generalised_table_from_partition(p, *ds.table, ds.hierarchies));
      cols[i] = d.x.numeric_columns();
      width[i] = d.x.cols();
      ++i;
    }
    pass = pass && cols[0] == cols[1] && cols[0] == numeric_attrs;
    parts.push_back(std::string(algorithm_name(a)) + " " + std::to_string(cols[0]) + "/" +
                    std::to_string(cols[1]) + " (width " + std::to_string(width[0]) + "/" +
                    std::to_string(width[1]) + ")");
  }
  Outcome o;
  o.pass = pass;
  o.summary = "numeric columns at k=2/k=100: " + join(parts, ", ") + "; expected " +
              std::to_string(numeric_attrs);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"safety suite", safety},
      {"OLA optimality", ola_optimality},
      {"Mondrian class counts, mgm", mondrian_mgm},
      {"Mondrian class-count drop, cahousing", mondrian_cahousing},
      {"Spearman correlations, adult", spearman_adult},
      {"OLA generalisation trace, adult", ola_trace},
      {"metric oracle equivalence", metric_oracle},
      {"TDG/CB determinism", determinism},
      {"baselines", baselines},
      {"encoding guard", encoding_guard},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("error: ") + e.what();
    }
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id,
                criteria[i].first, o.summary.c_str(), seconds_since(t0));
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %d criteria passed\n",
              static_cast<int>(only.empty() ? criteria.size() : only.size()) - failed,
              static_cast<int>(only.empty() ? criteria.size() : only.size()));
  return failed == 0 ? 0 : 1;
}
