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


#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anonylat/anonylat.h"

namespace {

struct AnonymiseArgs {
  std::string dataset;
  std::string schema;
  std::string hier;
  std::string algo;
  int64_t k = 2;
  double max_sup = 0;
  std::string metric = "gweight";
  uint64_t seed = 0;
  std::string out;
};

void add_anonymise_options(CLI::App* cmd, AnonymiseArgs& a) {
  cmd->add_option("--dataset", a.dataset, "input CSV")->required();
  cmd->add_option("--schema", a.schema, "schema JSON")->required();
  cmd->add_option("--hier", a.hier, "hierarchy directory")->required();
  cmd->add_option("--algo", a.algo, "ola, mondrian, tdg or cb")->required();
  cmd->add_option("--k", a.k, "anonymity parameter")->required();
  cmd->add_option("--max-sup", a.max_sup, "suppression limit as a fraction of rows (OLA)");
  cmd->add_option("--metric", a.metric, "prec, gweight, aecs or dm (OLA)");
  cmd->add_option("--seed", a.seed, "seed for tdg and cb");
  cmd->add_option("--out", a.out, "output path")->required();
}

int report(anonylat_status s) {
  std::fprintf(stderr, "anonylat: %s: %s\n", anonylat_status_name(s), anonylat_last_error());
  return 1;
}

class Dataset {
 public:
  ~Dataset() { anonylat_dataset_free(d_); }
  anonylat_dataset* d_ = nullptr;
};

class Result {
 public:
  ~Result() { anonylat_partition_free(p_); }
  anonylat_partition* p_ = nullptr;
};

// Loads, anonymises and verifies; returns 0 on success.
int anonymise_verified(const AnonymiseArgs& a, Dataset& d, Result& r) {
  anonylat_status s =
      anonylat_dataset_load(a.dataset.c_str(), a.schema.c_str(), a.hier.c_str(), &d.d_);
  if (s != ANONYLAT_OK) return report(s);
  anonylat_params p = anonylat_default_params();
  p.algorithm = a.algo.c_str();
  p.k = a.k;
  p.max_sup = a.max_sup;
  p.metric = a.metric.c_str();
  p.seed = a.seed;
  s = anonylat_anonymise(d.d_, &p, &r.p_);
  if (s != ANONYLAT_OK) return report(s);
  int ok = 0;
  s = anonylat_verify(r.p_, a.k, &ok);
  if (s != ANONYLAT_OK) return report(s);
  if (!ok) {
    std::fprintf(stderr, "anonylat: verification failed: %s\n", anonylat_last_error());
    return 2;
  }
  return 0;
}

void print_summary(const Dataset& d, const Result& r) {
  size_t classes = 0;
  size_t suppressed = 0;
  anonylat_partition_num_classes(r.p_, &classes);
  anonylat_partition_num_suppressed(r.p_, &suppressed);
  std::printf("classes=%zu suppressed=%zu", classes, suppressed);
  size_t len = 0;
  std::vector<int> levels(64);
  if (anonylat_partition_node(r.p_, levels.data(), levels.size(), &len) == ANONYLAT_OK) {
    std::printf(" node=");
    for (size_t i = 0; i < len && i < levels.size(); ++i) {
      const char* name = "";
      anonylat_dataset_qid_name(d.d_, i, &name);
      std::printf("%s%s:%d", i ? "|" : "", name, levels[i]);
    }
  }
  std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-anonymisation experiments"};
  app.set_version_flag("--version", anonylat_version());
  app.require_subcommand(1);

  std::string config;
  size_t jobs = 1;
  bool verify = false;
  auto* run = app.add_subcommand("run", "run an experiment sweep");
  run->add_option("--config", config, "experiment config JSON")->required();
  run->add_option("--jobs", jobs, "concurrent cells")->check(CLI::PositiveNumber);
  run->add_flag("--verify", verify, "cross-check every cell against the oracles");

  AnonymiseArgs anon;
  auto* anonymise = app.add_subcommand("anonymise", "anonymise one table and export it");
  add_anonymise_options(anonymise, anon);

  auto* analyse = app.add_subcommand("analyse", "derived reports");
  analyse->require_subcommand(1);
  std::string results;
  std::string trace_out;
  auto* trace = analyse->add_subcommand("trace", "OLA generalisation levels per k");
  trace->add_option("--results", results, "results.csv of a sweep")->required();
  trace->add_option("--out", trace_out, "output directory")->required();

  AnonymiseArgs homog;
  auto* homogeneity = analyse->add_subcommand("homogeneity", "per-class target homogeneity");
  add_anonymise_options(homogeneity, homog);

  std::string sp_dataset;
  std::string sp_schema;
  std::string sp_hier;
  std::string sp_positive;
  std::string sp_out;
  auto* spearman = analyse->add_subcommand("spearman", "feature-target rank correlations");
  spearman->add_option("--dataset", sp_dataset, "input CSV")->required();
  spearman->add_option("--schema", sp_schema, "schema JSON")->required();
  spearman->add_option("--hier", sp_hier, "hierarchy directory")->required();
  spearman->add_option("--positive", sp_positive, "positive target label");
  spearman->add_option("--out", sp_out, "output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    size_t failed = 0;
    const anonylat_status s = anonylat_run_sweep(config.c_str(), jobs, verify ? 1 : 0, &failed);
    if (s != ANONYLAT_OK) return report(s);
    if (failed > 0) {
      std::fprintf(stderr, "anonylat: %zu cell(s) failed; see results.csv\n", failed);
      return 2;
    }
    return 0;
  }
  if (*anonymise) {
    Dataset d;
    Result r;
    if (int rc = anonymise_verified(anon, d, r)) return rc;
    const anonylat_status s = anonylat_export(r.p_, anon.out.c_str());
    if (s != ANONYLAT_OK) return report(s);
    print_summary(d, r);
    return 0;
  }
  if (*trace) {
    size_t files = 0;
    const anonylat_status s = anonylat_trace(results.c_str(), trace_out.c_str(), &files);
    if (s != ANONYLAT_OK) return report(s);
    std::printf("wrote %zu trace file(s)\n", files);
    return 0;
  }
  if (*homogeneity) {
    Dataset d;
    Result r;
    if (int rc = anonymise_verified(homog, d, r)) return rc;
    const anonylat_status s = anonylat_homogeneity_report(r.p_, homog.out.c_str());
    if (s != ANONYLAT_OK) return report(s);
    print_summary(d, r);
    return 0;
  }
  if (*spearman) {
    Dataset d;
    anonylat_status s = anonylat_dataset_load(sp_dataset.c_str(), sp_schema.c_str(),
                                              sp_hier.c_str(), &d.d_);
    if (s != ANONYLAT_OK) return report(s);
    s = anonylat_spearman(d.d_, sp_positive.empty() ? nullptr : sp_positive.c_str(),
                          sp_out.c_str());
    if (s != ANONYLAT_OK) return report(s);
    return 0;
  }
  return 0;
}
