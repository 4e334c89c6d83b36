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

// Information-loss metrics. Lower is better for every kind. prec, gweight
// (with integral weights), aecs and dm are computed as one integer numerator
// over one integer denominator followed by a single division.

#ifndef ANONYLAT_LOSS_METRICS_HPP_
#define ANONYLAT_LOSS_METRICS_HPP_

#include <cstdint>
#include <vector>

#include "hierarchy.hpp"
#include "lattice.hpp"
#include "partition.hpp"

namespace anonylat {

struct LossValue {
  double value = 0;
  MetricKind kind = MetricKind::kGweight;
};

// Suppressed rows count as fully generalised. QIDs of height 0 are skipped.
LossValue metric_prec(const LatticeNode& node, const std::vector<int>& heights,
                      int64_t n, int64_t suppressed);
LossValue metric_gweight(const LatticeNode& node, const std::vector<int>& heights,
                         const std::vector<double>& weights = {});
LossValue metric_aecs(int64_t non_suppressed, int64_t classes);
LossValue metric_aecs(const Partition& p);
LossValue metric_dm(int64_t sum_squares, int64_t suppressed, int64_t n);
LossValue metric_dm(const Partition& p, int64_t n);

// NCP of a class signature. Numerical terms are interval width over the
// domain range ("*" counts 1, a constant attribute 0); categorical terms are
// 0 for a single leaf, else subtree leaves over all leaves.
double ncp_class(const std::vector<GeneralisedValue>& signature,
                 const Hierarchies& hierarchies, const std::vector<Domain>& domains,
                 const std::vector<double>& weights = {});

// Per-attribute least common generalisation: interval hull or lowest common
// ancestor.
std::vector<GeneralisedValue> least_common_generalisation(
    const std::vector<GeneralisedValue>& a, const std::vector<GeneralisedValue>& b,
    const Hierarchies& hierarchies);

double ncp_merge(const std::vector<GeneralisedValue>& a,
                 const std::vector<GeneralisedValue>& b,
                 const Hierarchies& hierarchies, const std::vector<Domain>& domains,
                 const std::vector<double>& weights = {});

// Incremental NCP over row sets of one table, used by the partitioning
// algorithms. Results equal ncp_class on the corresponding hull signature.
class NcpModel {
 public:
  struct Cell {
    double lo = 0;
    double hi = 0;
    int level = 0;
    int node = 0;
  };
  using Summary = std::vector<Cell>;

  NcpModel(const QidIndex& index, std::vector<double> weights = {});

  const QidIndex& index() const { return *index_; }
  Summary of_row(size_t row) const;
  void absorb(Summary& s, size_t row) const;
  void absorb(Summary& s, const Summary& other) const;
  double ncp(const Summary& s) const;
  // NCP of s extended by one row, without modifying s.
  double ncp_with_row(const Summary& s, size_t row) const;
  double ncp_merged(const Summary& a, const Summary& b) const;
  // NCP of the two-row class {a, b}.
  double row_distance(size_t a, size_t b) const;
  Summary summarise(const std::vector<size_t>& rows) const;
  std::vector<GeneralisedValue> signature(const Summary& s) const;
  double weight(size_t q) const { return weights_.empty() ? 1.0 : weights_[q]; }

 private:
  double numeric_term(size_t q, double lo, double hi) const;
  double categorical_term(size_t q, int level, int node) const {
    return cat_terms_[q][level][node];
  }

  const QidIndex* index_;
  std::vector<double> weights_;
  std::vector<std::vector<std::vector<double>>> cat_terms_;
  // Pairwise categorical terms per QID, leaf-major, when small enough.
  std::vector<std::vector<double>> pair_terms_;
};

}  // namespace anonylat

#endif  // ANONYLAT_LOSS_METRICS_HPP_
