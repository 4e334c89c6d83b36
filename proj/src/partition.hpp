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

#ifndef ANONYLAT_PARTITION_HPP_
#define ANONYLAT_PARTITION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hierarchy.hpp"
#include "lattice.hpp"
#include "table.hpp"

namespace anonylat {

enum class Algorithm { kOla, kMondrian, kTdg, kCb };
enum class MetricKind { kPrec, kGweight, kAecs, kDm };

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(const std::string& name);
const char* metric_name(MetricKind m);
std::optional<MetricKind> parse_metric(const std::string& name);

struct AlgoParams {
  int64_t k = 2;
  double max_sup = 0;
  MetricKind metric = MetricKind::kGweight;
  uint64_t seed = 0;
  // Per-QID weights for gweight and NCP; empty means all 1.
  std::vector<double> weights;
};

struct EquivalenceClass {
  std::vector<GeneralisedValue> signature;
  std::vector<size_t> members;  // ascending row ids
};

struct Partition {
  Algorithm algorithm = Algorithm::kOla;
  int64_t k = 1;
  double max_sup = 0;
  MetricKind metric = MetricKind::kGweight;
  uint64_t seed = 0;
  size_t num_rows = 0;
  std::vector<EquivalenceClass> classes;  // ordered by smallest member id
  std::vector<size_t> suppressed;         // ascending
  std::optional<LatticeNode> node;        // full-domain algorithms only
  int farthest_point_rounds = 0;          // TDG seed search cap
};

// Sorts members, suppressed ids and classes into canonical order.
void canonicalise(Partition& p);

struct VerifyResult {
  bool ok = true;
  std::string diagnostic;
};

// True iff every class has at least k members, classes and suppressed ids
// exactly cover the rows, and each member's QID values are covered by the
// class signature.
VerifyResult verify_k_anonymity(const Partition& p, const Table& table,
                                const Hierarchies& hierarchies, int64_t k);

// Members take their class signature, suppressed rows take "*". Throws a
// verification error if the partition does not verify at p.k.
GeneralisedTable generalised_table_from_partition(const Partition& p,
                                                  const Table& table,
                                                  const Hierarchies& hierarchies);

// Whether a generalised value covers an original cell.
bool covers(const GeneralisedValue& g, const Hierarchy& h, const std::string& text,
            double numeric);

}  // namespace anonylat

#endif  // ANONYLAT_PARTITION_HPP_
