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


/* C interface to the anonylat library. Objects are opaque handles released
 * with the matching *_free function. Every fallible call returns an
 * anonylat_status; on failure anonylat_last_error() describes the problem for
 * the calling thread until its next call. */

#ifndef ANONYLAT_ANONYLAT_H_
#define ANONYLAT_ANONYLAT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ANONYLAT_API __declspec(dllexport)
#else
#define ANONYLAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum anonylat_status {
  ANONYLAT_OK = 0,
  ANONYLAT_INVALID_ARGUMENT = 1,
  ANONYLAT_IO = 2,
  ANONYLAT_SCHEMA = 3,
  ANONYLAT_PARSE = 4,
  ANONYLAT_FORMAT = 5,
  ANONYLAT_COVERAGE = 6,
  ANONYLAT_BOUNDS = 7,
  ANONYLAT_INFEASIBLE = 8,
  ANONYLAT_VERIFICATION = 9,
  ANONYLAT_INTERNAL = 10
} anonylat_status;

/* A table with its schema, hierarchies and resolved QID index. */
typedef struct anonylat_dataset anonylat_dataset;
/* An anonymisation result. Borrows its dataset, which must outlive it. */
typedef struct anonylat_partition anonylat_partition;

typedef struct anonylat_params {
  const char* algorithm; /* "ola", "mondrian", "tdg" or "cb" */
  int64_t k;
  double max_sup;        /* fraction of rows, OLA only */
  const char* metric;    /* "prec", "gweight", "aecs" or "dm"; NULL for gweight */
  uint64_t seed;
  const double* weights; /* one per QID, or NULL */
  size_t num_weights;
} anonylat_params;

ANONYLAT_API const char* anonylat_version(void);
ANONYLAT_API const char* anonylat_last_error(void);
ANONYLAT_API const char* anonylat_status_name(anonylat_status status);

/* Default parameters: k=2, no suppression, gweight, seed 0, unit weights. */
ANONYLAT_API anonylat_params anonylat_default_params(void);

ANONYLAT_API anonylat_status anonylat_dataset_load(const char* csv_path,
                                                   const char* schema_path,
                                                   const char* hierarchy_dir,
                                                   anonylat_dataset** out);
ANONYLAT_API void anonylat_dataset_free(anonylat_dataset* dataset);
ANONYLAT_API anonylat_status anonylat_dataset_num_rows(const anonylat_dataset* dataset,
                                                       size_t* out);
ANONYLAT_API anonylat_status anonylat_dataset_num_qids(const anonylat_dataset* dataset,
                                                       size_t* out);
/* Name of QID `index`; valid while the dataset lives. */
ANONYLAT_API anonylat_status anonylat_dataset_qid_name(const anonylat_dataset* dataset,
                                                       size_t index, const char** out);

ANONYLAT_API anonylat_status anonylat_anonymise(const anonylat_dataset* dataset,
                                                const anonylat_params* params,
                                                anonylat_partition** out);
ANONYLAT_API void anonylat_partition_free(anonylat_partition* partition);
ANONYLAT_API anonylat_status anonylat_partition_num_classes(const anonylat_partition* p,
                                                            size_t* out);
ANONYLAT_API anonylat_status anonylat_partition_class_size(const anonylat_partition* p,
                                                           size_t index, size_t* out);
ANONYLAT_API anonylat_status anonylat_partition_num_suppressed(const anonylat_partition* p,
                                                               size_t* out);
/* Copies the lattice node of a full-domain result into `levels` (capacity
 * `cap`) and stores the QID count in `len`. Fails with ANONYLAT_INVALID_ARGUMENT
 * for algorithms without a node. */
ANONYLAT_API anonylat_status anonylat_partition_node(const anonylat_partition* p, int* levels,
                                                     size_t cap, size_t* len);
/* Information loss of the partition under `metric`. prec and gweight need a
 * full-domain result. */
ANONYLAT_API anonylat_status anonylat_partition_loss(const anonylat_partition* p,
                                                     const char* metric, double* out);

/* Sets *ok to 1 if the partition is k-anonymous for `k`, else 0. */
ANONYLAT_API anonylat_status anonylat_verify(const anonylat_partition* p, int64_t k, int* ok);
/* Writes the generalised table and "<path>.meta.json". */
ANONYLAT_API anonylat_status anonylat_export(const anonylat_partition* p, const char* path);
/* Writes per-class homogeneity and "<path>.summary.json". */
ANONYLAT_API anonylat_status anonylat_homogeneity_report(const anonylat_partition* p,
                                                         const char* path);

/* Spearman correlation of every encoded feature with the target, as CSV.
 * `positive_class` may be NULL to use the schema's. */
ANONYLAT_API anonylat_status anonylat_spearman(const anonylat_dataset* dataset,
                                               const char* positive_class, const char* path);

/* Runs an experiment config. `failed_cells` receives the number of records
 * whose status is not "ok". */
ANONYLAT_API anonylat_status anonylat_run_sweep(const char* config_path, size_t jobs,
                                                int verify, size_t* failed_cells);
/* Generalisation traces from a results CSV into `out_dir`; `files` receives
 * the number of files written. */
ANONYLAT_API anonylat_status anonylat_trace(const char* results_path, const char* out_dir,
                                            size_t* files);

#ifdef __cplusplus
}
#endif

#endif /* ANONYLAT_ANONYLAT_H_ */
