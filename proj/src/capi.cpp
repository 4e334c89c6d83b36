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


#include "anonylat/anonylat.h"

#include <exception>
#include <memory>
#include <new>
#include <string>

#include "anonymizers.hpp"
#include "error.hpp"
#include "loss_metrics.hpp"
#include "runner.hpp"

struct anonylat_dataset {
  std::unique_ptr<anonylat::LoadedDataset> data;
};

struct anonylat_partition {
  const anonylat_dataset* dataset = nullptr;
  anonylat::Partition partition;
};

namespace {

thread_local std::string last_error;

anonylat_status status_of(anonylat::ErrorCode code) {
  return static_cast<anonylat_status>(static_cast<int>(code));
}

template <typename F>
anonylat_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return ANONYLAT_OK;
  } catch (const anonylat::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ANONYLAT_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ANONYLAT_INTERNAL;
  }
}

void require(bool cond, const char* what) {
  if (!cond) anonylat::fail(anonylat::ErrorCode::kInvalidArgument, what);
}

anonylat::MetricKind metric_or_default(const char* name) {
  if (name == nullptr) return anonylat::MetricKind::kGweight;
  auto m = anonylat::parse_metric(name);
  if (!m) anonylat::fail(anonylat::ErrorCode::kInvalidArgument,
                         std::string("unknown metric '") + name + "'");
  return *m;
}

}  // namespace

extern "C" {

const char* anonylat_version(void) { return ANONYLAT_VERSION; }

const char* anonylat_last_error(void) { return last_error.c_str(); }

const char* anonylat_status_name(anonylat_status status) {
  if (status == ANONYLAT_OK) return "ok";
  if (status < ANONYLAT_INVALID_ARGUMENT || status > ANONYLAT_INTERNAL) return "unknown";
  return anonylat::error_code_name(static_cast<anonylat::ErrorCode>(status));
}

anonylat_params anonylat_default_params(void) {
  anonylat_params p;
  p.algorithm = "ola";
  p.k = 2;
  p.max_sup = 0;
  p.metric = "gweight";
  p.seed = 0;
  p.weights = nullptr;
  p.num_weights = 0;
  return p;
}

anonylat_status anonylat_dataset_load(const char* csv_path, const char* schema_path,
                                      const char* hierarchy_dir, anonylat_dataset** out) {
  return guarded([&] {
    require(csv_path && schema_path && hierarchy_dir && out, "null argument");
    *out = nullptr;
    anonylat::DatasetConfig c;
    c.name = "dataset";
    c.csv = csv_path;
    c.schema = schema_path;
    c.hierarchies = hierarchy_dir;
    auto d = std::make_unique<anonylat_dataset>();
    d->data = anonylat::load_dataset(c);
    *out = d.release();
  });
}

void anonylat_dataset_free(anonylat_dataset* dataset) { delete dataset; }

anonylat_status anonylat_dataset_num_rows(const anonylat_dataset* dataset, size_t* out) {
  return guarded([&] {
    require(dataset && out, "null argument");
    *out = dataset->data->table->num_rows();
  });
}

anonylat_status anonylat_dataset_num_qids(const anonylat_dataset* dataset, size_t* out) {
  return guarded([&] {
    require(dataset && out, "null argument");
    *out = dataset->data->hierarchies.size();
  });
}

anonylat_status anonylat_dataset_qid_name(const anonylat_dataset* dataset, size_t index,
                                          const char** out) {
  return guarded([&] {
    require(dataset && out, "null argument");
    if (index >= dataset->data->hierarchies.size()) {
      anonylat::fail(anonylat::ErrorCode::kBounds, "QID index out of range");
    }
    *out = dataset->data->hierarchies[index]->attribute().c_str();
  });
}

anonylat_status anonylat_anonymise(const anonylat_dataset* dataset,
                                   const anonylat_params* params, anonylat_partition** out) {
  return guarded([&] {
    require(dataset && params && out, "null argument");
    *out = nullptr;
    require(params->algorithm != nullptr, "algorithm must be named");
    auto alg = anonylat::parse_algorithm(params->algorithm);
    if (!alg) {
      anonylat::fail(anonylat::ErrorCode::kInvalidArgument,
                     std::string("unknown algorithm '") + params->algorithm + "'");
    }
    anonylat::AlgoParams ap;
    ap.k = params->k;
    ap.max_sup = params->max_sup;
    ap.metric = metric_or_default(params->metric);
    ap.seed = params->seed;
    if (params->weights != nullptr) {
      ap.weights.assign(params->weights, params->weights + params->num_weights);
    }
    auto p = std::make_unique<anonylat_partition>();
    p->dataset = dataset;
    p->partition = anonylat::anonymise(*dataset->data->index, *alg, ap);
    *out = p.release();
  });
}

void anonylat_partition_free(anonylat_partition* partition) { delete partition; }

anonylat_status anonylat_partition_num_classes(const anonylat_partition* p, size_t* out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = p->partition.classes.size();
  });
}

anonylat_status anonylat_partition_class_size(const anonylat_partition* p, size_t index,
                                              size_t* out) {
  return guarded([&] {
    require(p && out, "null argument");
    if (index >= p->partition.classes.size()) {
      anonylat::fail(anonylat::ErrorCode::kBounds, "class index out of range");
    }
    *out = p->partition.classes[index].members.size();
  });
}

anonylat_status anonylat_partition_num_suppressed(const anonylat_partition* p, size_t* out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = p->partition.suppressed.size();
  });
}

anonylat_status anonylat_partition_node(const anonylat_partition* p, int* levels, size_t cap,
                                        size_t* len) {
  return guarded([&] {
    require(p && len, "null argument");
    require(p->partition.node.has_value(), "partition has no lattice node");
    const auto& node = *p->partition.node;
    *len = node.size();
    require(levels != nullptr || cap == 0, "null levels buffer");
    for (size_t i = 0; i < node.size() && i < cap; ++i) levels[i] = node[i];
  });
}

anonylat_status anonylat_partition_loss(const anonylat_partition* p, const char* metric,
                                        double* out) {
  return guarded([&] {
    require(p && out, "null argument");
    const anonylat::MetricKind kind = metric_or_default(metric);
    const auto& part = p->partition;
    const auto n = static_cast<int64_t>(part.num_rows);
    const auto s = static_cast<int64_t>(part.suppressed.size());
    if (kind == anonylat::MetricKind::kAecs) {
      *out = anonylat::metric_aecs(part).value;
      return;
    }
    if (kind == anonylat::MetricKind::kDm) {
      *out = anonylat::metric_dm(part, n).value;
      return;
    }
    require(part.node.has_value(), "prec and gweight need a full-domain result");
    const auto heights = p->dataset->data->index->heights();
    *out = kind == anonylat::MetricKind::kPrec
               ? anonylat::metric_prec(*part.node, heights, n, s).value
               : anonylat::metric_gweight(*part.node, heights).value;
  });
}

anonylat_status anonylat_verify(const anonylat_partition* p, int64_t k, int* ok) {
  return guarded([&] {
    require(p && ok, "null argument");
    const auto& d = *p->dataset->data;
    const auto v = anonylat::verify_k_anonymity(p->partition, *d.table, d.hierarchies, k);
    *ok = v.ok ? 1 : 0;
    if (!v.ok) last_error = v.diagnostic;
  });
}

anonylat_status anonylat_export(const anonylat_partition* p, const char* path) {
  return guarded([&] {
    require(p && path, "null argument");
    const auto& d = *p->dataset->data;
    anonylat::export_anonymised(*d.table, p->partition, d.hierarchies, path, {});
  });
}

anonylat_status anonylat_homogeneity_report(const anonylat_partition* p, const char* path) {
  return guarded([&] {
    require(p && path, "null argument");
    anonylat::emit_homogeneity_report(p->partition, *p->dataset->data->table, path);
  });
}

anonylat_status anonylat_spearman(const anonylat_dataset* dataset, const char* positive_class,
                                  const char* path) {
  return guarded([&] {
    require(dataset && path, "null argument");
    std::optional<std::string> pos = dataset->data->positive_class();
    if (positive_class != nullptr) pos = positive_class;
    anonylat::write_spearman_csv(anonylat::spearman_report(*dataset->data->table, pos), path);
  });
}

anonylat_status anonylat_run_sweep(const char* config_path, size_t jobs, int verify,
                                   size_t* failed_cells) {
  return guarded([&] {
    require(config_path && failed_cells, "null argument");
    anonylat::SweepOptions o;
    o.jobs = jobs == 0 ? 1 : jobs;
    o.verify = verify != 0;
    *failed_cells = anonylat::run_sweep(anonylat::load_config(config_path), o).failures;
  });
}

anonylat_status anonylat_trace(const char* results_path, const char* out_dir, size_t* files) {
  return guarded([&] {
    require(results_path && out_dir && files, "null argument");
    *files = anonylat::emit_generalisation_trace(anonylat::read_results_csv(results_path),
                                                 out_dir)
                 .size();
  });
}

}  // extern "C"
